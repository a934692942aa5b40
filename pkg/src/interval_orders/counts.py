"""Exact counts of unlabelled, rigid and labelled interval orders."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Sequence

from .series import interval_gf, rigid_gf


@dataclass(frozen=True)
class CountTable:
    """Exact sequences through ``max_n``.

    i_seq: unlabelled interval orders, r_seq: rigid unlabelled interval
    orders, l_seq: labelled interval orders on [n]. ``stirling[n][k]`` is
    S(n, k) for 0 <= k <= n; rows are ragged.
    """

    max_n: int
    i_seq: tuple[int, ...]
    r_seq: tuple[int, ...]
    l_seq: tuple[int, ...]
    stirling: tuple[tuple[int, ...], ...]
    factorials: tuple[int, ...]

    def S(self, n: int, k: int) -> int:
        if k < 0 or k > n:
            return 0
        return self.stirling[n][k]


def stirling_triangle(max_n: int) -> tuple[tuple[int, ...], ...]:
    """Rows of S(n, k) from S(n,k) = k S(n-1,k) + S(n-1,k-1)."""
    rows = [(1,)]
    for n in range(1, max_n + 1):
        prev = rows[-1]
        row = [0] * (n + 1)
        for k in range(1, n + 1):
            row[k] = (k * prev[k] if k < n else 0) + prev[k - 1]
        rows.append(tuple(row))
    return tuple(rows)


def build(max_n: int) -> CountTable:
    if max_n < 0:
        raise ValueError(f"max_n must be nonnegative, got {max_n}")
    i_seq = interval_gf(max_n).coeffs
    r_seq = rigid_gf(max_n).coeffs
    stirling = stirling_triangle(max_n)
    facts = [1]
    for k in range(1, max_n + 1):
        facts.append(facts[-1] * k)
    l_seq = [1]
    for n in range(1, max_n + 1):
        row = stirling[n]
        l_seq.append(sum(r_seq[k] * facts[k] * row[k] for k in range(1, n + 1)))
    return CountTable(max_n, i_seq, r_seq, tuple(l_seq), stirling, tuple(facts))


def rigid_by_transform(n: int, i_seq: Sequence[int], include_i0: bool = False) -> int:
    """r_n as the alternating binomial transform of i_1..i_n.

    ``include_i0`` adds a stray leading i_0 term; the result is then off by
    exactly i_0 = 1 for every n >= 1. It exists only so the CLI can show the
    discrepancy.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return i_seq[0]
    total = sum((-1) ** k * comb(n - 1, k) * i_seq[n - k] for k in range(n))
    return total + i_seq[0] if include_i0 else total


def multiplicity_sum(n: int, table: CountTable) -> int:
    """sum_m r_m C(n-1, m-1): interval orders on n points by rigid reduction."""
    return sum(table.r_seq[m] * comb(n - 1, m - 1) for m in range(1, n + 1))


def multiplicity_identity_check(n: int, table: CountTable) -> bool:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return multiplicity_sum(n, table) == table.i_seq[n]


def surjections(n: int, k: int, table: CountTable) -> int:
    """Number of onto maps [n] -> [k]."""
    if k > n:
        return 0
    if k < 0 or n > table.max_n:
        raise ValueError(f"need 0 <= k <= n <= {table.max_n}, got n={n}, k={k}")
    return table.factorials[k] * table.S(n, k)


def bgp_upper_bound(n: int) -> int:
    """(2n)!/2^n, an upper bound on labelled interval orders of size n."""
    return factorial(2 * n) // 2**n


def bgp_upper_check(n: int, table: CountTable) -> bool:
    if not 1 <= n <= table.max_n:
        raise ValueError(f"need 1 <= n <= {table.max_n}, got {n}")
    return table.l_seq[n] <= bgp_upper_bound(n)
