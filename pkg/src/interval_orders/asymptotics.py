"""High-precision asymptotic constants and convergence diagnostics.

Counts are scaled by n! sqrt(n) (6/pi^2)^n (or (n!)^2 sqrt(n) (6/pi^2)^n for
labelled orders) and the scaled values are fitted to a0 + a1/n + a2/n^2.
Huge factorials are kept as exact integers until the final division, which
is done in mpmath at the requested precision.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, perm
from typing import Sequence

import mpmath

from .counts import CountTable

DEFAULT_PRECISION_BITS = 256
GUARD_BITS = 16

# convergence tolerances; the asymptotic statements carry no explicit error bounds
A0_REL_TOL = 1e-3
D1_REL_GAP_TOL = 0.05
RIGID_PROPORTION_TOL = 0.01
HSU_IMPROVEMENT_FACTOR = 10
MATCHINGS_REL_TOL = 0.05

KINDS = ("unlabelled", "rigid", "labelled")


@dataclass(frozen=True)
class AsymptoticConstants:
    precision_bits: int
    c0: mpmath.mpf
    d0: mpmath.mpf
    e0: mpmath.mpf
    exp_neg_pi2_over_6: mpmath.mpf
    lambda_unlabelled: mpmath.mpf
    lambda_labelled: mpmath.mpf

    def leading(self, kind: str) -> mpmath.mpf:
        return {"unlabelled": self.c0, "rigid": self.d0, "labelled": self.e0}[_kind(kind)]


@dataclass(frozen=True)
class FitResult:
    """ratio(n) ~ a0 + a1/n + a2/n^2 over ``sample_points``."""

    a0: mpmath.mpf
    a1: mpmath.mpf
    a2: mpmath.mpf
    sample_points: tuple[int, ...]
    residual: mpmath.mpf


@dataclass(frozen=True)
class D1Check:
    predicted_d1: mpmath.mpf
    observed_d1: mpmath.mpf
    relative_gap: mpmath.mpf


@dataclass(frozen=True)
class HsuCheck:
    """Exact ratios of S(n, n-j) to its leading and f_1-corrected approximations."""

    n: int
    j: int
    ratio_leading: Fraction
    ratio_corrected: Fraction


def _kind(kind: str) -> str:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    return kind


def constants(precision_bits: int = DEFAULT_PRECISION_BITS) -> AsymptoticConstants:
    if precision_bits < 64:
        raise ValueError(f"precision_bits must be >= 64, got {precision_bits}")
    with mpmath.workprec(precision_bits + GUARD_BITS):
        pi = mpmath.pi()
        pi2 = pi * pi
        e0 = 12 * mpmath.sqrt(3) / (pi2 * mpmath.sqrt(pi))
        half = mpmath.exp(pi2 / 12)
        c0 = e0 * half
        d0 = e0 / half
        vals = (c0, d0, e0, mpmath.exp(-pi2 / 6), pi2 / 6, pi2 / 12)
    return AsymptoticConstants(precision_bits, *_at(precision_bits, vals))


def _at(precision_bits, vals):
    # round guard-bit results to the advertised precision
    with mpmath.workprec(precision_bits):
        return [+v for v in vals]


def _scale_denominator(kind: str, n: int, table: CountTable) -> int:
    # exact part of the scaling, (n!)^e * 6^n; pi^(2n) and sqrt(n) are applied in mpmath
    f = table.factorials[n]
    return (f * f if kind == "labelled" else f) * 6**n


def scaled_ratio(
    kind: str, n: int, table: CountTable, precision_bits: int = DEFAULT_PRECISION_BITS
) -> mpmath.mpf:
    """count_n / (n!^e sqrt(n) (6/pi^2)^n), e = 2 for labelled else 1."""
    _kind(kind)
    if not 1 <= n <= table.max_n:
        raise ValueError(f"need 1 <= n <= {table.max_n}, got {n}")
    count = {"unlabelled": table.i_seq, "rigid": table.r_seq, "labelled": table.l_seq}[kind][n]
    denom = _scale_denominator(kind, n, table)
    with mpmath.workprec(precision_bits + GUARD_BITS):
        x = mpmath.mpf(count) / mpmath.mpf(denom) * mpmath.pi() ** (2 * n) / mpmath.sqrt(n)
    with mpmath.workprec(precision_bits):
        return +x


def fit_expansion(
    ns: Sequence[int], values: Sequence, precision_bits: int = DEFAULT_PRECISION_BITS
) -> FitResult:
    """Fit values ~ a0 + a1/n + a2/n^2; exact solve for 3 points, least squares above."""
    ns = tuple(int(n) for n in ns)
    if len(ns) != len(values):
        raise ValueError("ns and values differ in length")
    if len(set(ns)) != len(ns):
        raise ValueError(f"sample points must be distinct, got {ns}")
    if len(ns) < 3:
        raise ValueError("need at least 3 sample points")
    if any(n <= 0 for n in ns):
        raise ValueError("sample points must be positive")
    with mpmath.workprec(precision_bits + GUARD_BITS):
        rows = [[mpmath.mpf(1), mpmath.mpf(1) / n, mpmath.mpf(1) / n**2] for n in ns]
        A = mpmath.matrix(rows)
        b = mpmath.matrix([mpmath.mpf(v) for v in values])
        if len(ns) == 3:
            sol = mpmath.lu_solve(A, b)
        else:
            sol, _ = mpmath.qr_solve(A, b)
        a0, a1, a2 = sol[0], sol[1], sol[2]
        residual = max(abs(a0 + a1 / n + a2 / n**2 - mpmath.mpf(v)) for n, v in zip(ns, values))
    with mpmath.workprec(precision_bits):
        return FitResult(+a0, +a1, +a2, ns, +residual)


def extrapolate(
    kind: str,
    n_points: Sequence[int],
    table: CountTable,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> FitResult:
    values = [scaled_ratio(kind, n, table, precision_bits) for n in n_points]
    return fit_expansion(n_points, values, precision_bits)


def d1_consistency(c_fit: FitResult, r_fit: FitResult, k: AsymptoticConstants) -> D1Check:
    """Compare the rigid fit's 1/n coefficient with (C_1 + pi^2 C_0 / 4) e^(-pi^2/6)."""
    if c_fit.sample_points != r_fit.sample_points:
        raise ValueError("fits must share sample points")
    with mpmath.workprec(k.precision_bits + GUARD_BITS):
        pi2_over_4 = k.lambda_unlabelled * 6 / 4
        predicted = (c_fit.a1 + pi2_over_4 * k.c0) * k.exp_neg_pi2_over_6
        observed = r_fit.a1
        gap = abs(predicted - observed) / abs(observed) if observed else mpmath.inf
    with mpmath.workprec(k.precision_bits):
        return D1Check(+predicted, +observed, +gap)


def hsu_f1(j: int) -> Fraction:
    return Fraction(j * (2 * j + 1), 3)


def hsu_check(n: int, j: int, table: CountTable) -> HsuCheck:
    """Compare S(n, n-j) with (n-j)^(2j)/(j! 2^j) and its (1 + f_1(j)/(n-j)) refinement."""
    if not 0 <= j < n <= table.max_n:
        raise ValueError(f"need 0 <= j < n <= {table.max_n}, got n={n}, j={j}")
    m = n - j
    leading = Fraction(table.S(n, m) * table.factorials[j] * 2**j, m ** (2 * j))
    corrected = leading / (1 + hsu_f1(j) / m)
    return HsuCheck(n, j, leading, corrected)


def matchings_lower(n: int, j: int) -> int:
    """Partitions of [n] into n-j blocks of size at most 2: n!/((n-2j)! j! 2^j)."""
    if j < 0 or n < 0:
        raise ValueError(f"need n, j >= 0, got n={n}, j={j}")
    if 2 * j > n:
        return 0
    return perm(n, 2 * j) // (factorial(j) * 2**j)


def fraction_to_mpf(q: Fraction, precision_bits: int = DEFAULT_PRECISION_BITS) -> mpmath.mpf:
    with mpmath.workprec(precision_bits):
        return mpmath.mpf(q.numerator) / q.denominator
