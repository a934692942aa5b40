"""Exact laws for the duplicated-holdings structure of interval orders.

Two families of Pmf are built from a CountTable:

* reduction-size laws: the number m of points in the rigid reduction of a
  uniform interval order on n points (unlabelled or labelled);
* pair laws: the number j of pairs with duplicated holdings, counted only
  over orders whose reduction has every multiplicity <= 2. Orders with a
  multiplicity >= 3 are left as ``defect`` instead of being guessed.

Everything is an exact Fraction; mpmath appears only in the Poisson
reference and the total variation distance.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import mpmath

from .asymptotics import matchings_lower
from .counts import CountTable

MODELS = ("unlabelled", "labelled")


@dataclass(frozen=True)
class Pmf:
    """Masses on support_offset, support_offset+1, ...; ``defect`` is unassigned mass."""

    support_offset: int
    masses: tuple[Fraction, ...]
    defect: Fraction = Fraction(0)

    def __post_init__(self):
        if any(m < 0 for m in self.masses):
            raise ValueError("negative mass")
        if self.defect < 0:
            raise ValueError("negative defect")
        if sum(self.masses, Fraction(0)) + self.defect != 1:
            raise ValueError("masses and defect do not sum to 1")

    def mass(self, j: int) -> Fraction:
        k = j - self.support_offset
        if 0 <= k < len(self.masses):
            return self.masses[k]
        return Fraction(0)

    @property
    def support(self) -> range:
        return range(self.support_offset, self.support_offset + len(self.masses))


def _check(model: str, n: int, table: CountTable) -> None:
    if model not in MODELS:
        raise ValueError(f"model must be one of {MODELS}, got {model!r}")
    if not 1 <= n <= table.max_n:
        raise ValueError(f"need 1 <= n <= {table.max_n}, got {n}")


def reduction_size_pmf(model: str, n: int, table: CountTable) -> Pmf:
    """Law of the reduction size m = 1..n."""
    _check(model, n, table)
    r = table.r_seq
    if model == "unlabelled":
        total = table.i_seq[n]
        counts = [r[m] * comb(n - 1, m - 1) for m in range(1, n + 1)]
    else:
        total = table.l_seq[n]
        counts = [r[m] * table.factorials[m] * table.S(n, m) for m in range(1, n + 1)]
    # the constructor rejects anything not summing to 1, which is the decomposition identity
    return Pmf(1, tuple(Fraction(c, total) for c in counts))


def pair_counts(model: str, n: int, table: CountTable) -> list[int]:
    """Orders on n points with exactly j duplicated pairs and all multiplicities <= 2.

    Unlabelled: choose which j points of an (n-j)-point rigid order are doubled.
    Labelled: a rigid order on n-j points times the surjections from [n] onto
    it whose fibres have size <= 2, i.e. (n-j)! times the partitions of [n]
    into j pairs and n-2j singletons.
    """
    _check(model, n, table)
    r = table.r_seq
    out = []
    for j in range(n // 2 + 1):
        m = n - j
        if model == "unlabelled":
            out.append(r[m] * comb(m, j))
        else:
            out.append(r[m] * table.factorials[m] * matchings_lower(n, j))
    return out


def pair_pmf(model: str, n: int, table: CountTable) -> Pmf:
    counts = pair_counts(model, n, table)
    total = table.i_seq[n] if model == "unlabelled" else table.l_seq[n]
    masses = tuple(Fraction(c, total) for c in counts)
    return Pmf(0, masses, 1 - sum(masses, Fraction(0)))


def poisson_pmf(lam, j_max: int) -> list[mpmath.mpf]:
    """e^-lam lam^j / j! for j = 0..j_max at the current mpmath precision."""
    lam = mpmath.mpf(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if j_max < 0:
        raise ValueError("j_max must be nonnegative")
    term = mpmath.exp(-lam)
    out = [term]
    for j in range(1, j_max + 1):
        term = term * lam / j
        out.append(term)
    return out


def tv_distance(p: Pmf, q: Sequence) -> mpmath.mpf:
    """Total variation distance between ``p`` and a (possibly truncated) law ``q``.

    ``q[j]`` is the mass at j. Mass of q past its end and p's defect both
    count as pure discrepancy.
    """
    if len(q) < p.support.stop:
        raise ValueError(f"q has {len(q)} entries, p needs {p.support.stop}")
    qs = [mpmath.mpf(x) for x in q]
    diff = mpmath.mpf(0)
    for j, qj in enumerate(qs):
        pj = p.mass(j)
        diff += abs(mpmath.mpf(pj.numerator) / pj.denominator - qj)
    tail = 1 - mpmath.fsum(qs)
    defect = mpmath.mpf(p.defect.numerator) / p.defect.denominator
    return (diff + defect + tail) / 2
