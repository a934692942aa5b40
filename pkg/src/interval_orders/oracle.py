"""Brute-force ground truth for small interval orders.

Every labelled strict partial order on {0, ..., n-1} is generated, interval
orders are recognised by nested down-sets, and isomorphism classes are found
by minimising the relation matrix over all relabellings. Exponential in n;
capped at ``MAX_ORACLE_N``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterator

MAX_ORACLE_N = 5


class OracleBoundError(ValueError):
    """Raised when an exhaustive enumeration would exceed the size cap."""


@dataclass(frozen=True)
class Poset:
    """Strict partial order on range(n); ``rel[x][y]`` is True iff x < y."""

    n: int
    rel: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        n, rel = self.n, self.rel
        if len(rel) != n or any(len(row) != n for row in rel):
            raise ValueError("relation matrix must be n x n")
        for x in range(n):
            if rel[x][x]:
                raise ValueError(f"not irreflexive at {x}")
            for y in range(n):
                if rel[x][y] and rel[y][x]:
                    raise ValueError(f"not antisymmetric at {x}, {y}")
                if rel[x][y]:
                    for z in range(n):
                        if rel[y][z] and not rel[x][z]:
                            raise ValueError(f"not transitive at {x} < {y} < {z}")

    @classmethod
    def from_pairs(cls, n: int, pairs) -> Poset:
        """Poset generated by the relations x < y in ``pairs`` (closed transitively)."""
        m = [[False] * n for _ in range(n)]
        for x, y in pairs:
            m[x][y] = True
        for k in range(n):
            for i in range(n):
                if m[i][k]:
                    for j in range(n):
                        if m[k][j]:
                            m[i][j] = True
        return cls(n, tuple(tuple(row) for row in m))

    @classmethod
    def chain(cls, n: int) -> Poset:
        return cls.from_pairs(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def antichain(cls, n: int) -> Poset:
        return cls.from_pairs(n, [])

    @cached_property
    def _down_masks(self) -> tuple[int, ...]:
        return tuple(
            sum(1 << y for y in range(self.n) if self.rel[y][x]) for x in range(self.n)
        )

    @cached_property
    def _up_masks(self) -> tuple[int, ...]:
        return tuple(
            sum(1 << y for y in range(self.n) if self.rel[x][y]) for x in range(self.n)
        )

    def down_set(self, x: int) -> frozenset[int]:
        return frozenset(y for y in range(self.n) if self.rel[y][x])

    def up_set(self, x: int) -> frozenset[int]:
        return frozenset(y for y in range(self.n) if self.rel[x][y])

    def relabel(self, perm) -> Poset:
        """Image under x -> perm[x]."""
        n = self.n
        m = [[False] * n for _ in range(n)]
        for x in range(n):
            for y in range(n):
                if self.rel[x][y]:
                    m[perm[x]][perm[y]] = True
        return Poset(n, tuple(tuple(row) for row in m))


def _subsets(mask: int) -> Iterator[int]:
    # all submasks of `mask`, including 0
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _enumerate_masks(n: int) -> Iterator[tuple[int, ...]]:
    # yields up-set bitmasks; element v is added on top of every poset on
    # range(v) by choosing a down-closed D and an up-closed U with D < U
    if n == 0:
        yield ()
        return
    v = n - 1
    full = (1 << v) - 1
    for ups in _enumerate_masks(v):
        downs = [0] * v
        for x in range(v):
            for y in range(v):
                if ups[x] >> y & 1:
                    downs[y] |= 1 << x
        for D in _subsets(full):
            if any(D >> y & 1 and downs[y] & ~D for y in range(v)):
                continue
            rest = full & ~D
            for U in _subsets(rest):
                if any(U >> y & 1 and ups[y] & ~U for y in range(v)):
                    continue
                if any(D >> d & 1 and U & ~ups[d] for d in range(v)):
                    continue
                new_ups = list(ups)
                for d in range(v):
                    if D >> d & 1:
                        new_ups[d] |= 1 << v
                new_ups.append(U)
                yield tuple(new_ups)


def _check_cap(n: int) -> None:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > MAX_ORACLE_N:
        raise OracleBoundError(
            f"exhaustive enumeration is capped at n={MAX_ORACLE_N}, got n={n}"
        )


def enumerate_posets(n: int) -> Iterator[Poset]:
    """Every strict partial order on range(n), each exactly once."""
    _check_cap(n)
    for ups in _enumerate_masks(n):
        yield Poset(n, tuple(tuple(bool(ups[x] >> y & 1) for y in range(n)) for x in range(n)))


def _is_chain(masks) -> bool:
    return all(a & b in (a, b) for a, b in combinations(masks, 2))


def is_interval_order(p: Poset) -> bool:
    """True iff the strict down-sets are totally ordered by inclusion."""
    by_down = _is_chain(p._down_masks)
    by_up = _is_chain(p._up_masks)
    assert by_down == by_up, "down-set and up-set chain conditions disagree"
    return by_down


def has_two_plus_two(p: Poset) -> bool:
    """True iff p contains two disjoint 2-chains that are mutually incomparable."""
    rel = p.rel
    pairs = [(a, b) for a in range(p.n) for b in range(p.n) if rel[a][b]]
    for (a, b), (c, d) in combinations(pairs, 2):
        if len({a, b, c, d}) < 4:
            continue
        if not (rel[a][d] or rel[c][b] or rel[d][a] or rel[b][c]):
            return True
    return False


def duplicated_pair_count(p: Poset) -> int:
    """Unordered pairs {x, y} with identical down-sets and identical up-sets."""
    holdings = Counter(zip(p._down_masks, p._up_masks))
    return sum(c * (c - 1) // 2 for c in holdings.values())


def max_multiplicity(p: Poset) -> int:
    """Size of the largest class of elements sharing down-set and up-set."""
    if p.n == 0:
        return 0
    return max(Counter(zip(p._down_masks, p._up_masks)).values())


def canonical_form(p: Poset) -> bytes:
    """Lexicographically least row-major bit string of rel over all relabellings.

    Equal outputs iff the posets are isomorphic.
    """
    _check_cap(p.n)
    n = p.n
    ups = p._up_masks
    nbytes = (n * n + 7) // 8
    best = None
    for perm in permutations(range(n)):
        # perm[new] = old: bit (new_x, new_y) set iff perm[new_x] < perm[new_y]
        code = 0
        for x in range(n):
            row = ups[perm[x]]
            for y in range(n):
                code = code << 1 | (row >> perm[y] & 1)
        if best is None or code < best:
            best = code
    return bytes([n]) + best.to_bytes(nbytes, "big")


def automorphism_count(p: Poset) -> int:
    """Number of order automorphisms, by trying every permutation."""
    return sum(1 for perm in permutations(range(p.n)) if p.relabel(perm) == p)


@dataclass
class Census:
    n: int
    labelled_interval: int
    unlabelled_interval: int
    rigid_unlabelled: int
    pair_histogram: dict[int, int] = field(default_factory=dict)
    # same, restricted to orders in which no three elements share holdings
    pair_histogram_no_triple: dict[int, int] = field(default_factory=dict)
    labelled_pair_histogram_no_triple: dict[int, int] = field(default_factory=dict)
    labelled_posets: int = 0
    unlabelled_posets: int = 0


def oracle_census(n: int) -> Census:
    """Exhaustive counts of interval orders on n points.

    ``pair_histogram`` is taken over isomorphism classes, keyed by the number
    of duplicated pairs. The ``*_no_triple`` histograms keep only orders whose
    classes of equal holdings have size at most 2; the labelled one counts
    labelled orders rather than classes.
    """
    _check_cap(n)
    labelled = 0
    labelled_posets = 0
    poset_classes = set()
    classes: dict[bytes, int] = {}
    no_triple: dict[bytes, int] = {}
    labelled_no_triple: Counter = Counter()
    for p in enumerate_posets(n):
        labelled_posets += 1
        key = canonical_form(p)
        poset_classes.add(key)
        if not is_interval_order(p):
            continue
        labelled += 1
        pairs = duplicated_pair_count(p)
        seen = classes.setdefault(key, pairs)
        if seen != pairs:
            raise AssertionError("duplicated pair count is not an isomorphism invariant")
        if max_multiplicity(p) <= 2:
            no_triple[key] = pairs
            labelled_no_triple[pairs] += 1
    hist = Counter(classes.values())
    return Census(
        n=n,
        labelled_interval=labelled,
        unlabelled_interval=len(classes),
        rigid_unlabelled=hist.get(0, 0),
        pair_histogram=dict(sorted(hist.items())),
        pair_histogram_no_triple=dict(sorted(Counter(no_triple.values()).items())),
        labelled_pair_histogram_no_triple=dict(sorted(labelled_no_triple.items())),
        labelled_posets=labelled_posets,
        unlabelled_posets=len(poset_classes),
    )
