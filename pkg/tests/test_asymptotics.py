import math
from fractions import Fraction
from itertools import combinations

import mpmath
import pytest

from interval_orders import asymptotics as asy
from interval_orders.asymptotics import (
    constants,
    d1_consistency,
    extrapolate,
    fit_expansion,
    hsu_check,
    matchings_lower,
    scaled_ratio,
)

PI2 = math.pi**2


def partitions_small_blocks(n, blocks):
    """Partitions of range(n) into `blocks` blocks of size <= 2, by recursion."""
    def rec(items):
        if not items:
            yield 0
            return
        first, rest = items[0], items[1:]
        for count in rec(rest):
            yield count + 1
        for i in range(len(rest)):
            for count in rec(rest[:i] + rest[i + 1:]):
                yield count + 1
    return sum(1 for c in rec(list(range(n))) if c == blocks)


def test_constants_against_floats():
    k = constants()
    e0 = 12 * math.sqrt(3) / math.pi**2.5
    assert float(k.e0) == pytest.approx(e0, rel=1e-14)
    assert float(k.c0) == pytest.approx(e0 * math.exp(PI2 / 12), rel=1e-14)
    assert float(k.d0) == pytest.approx(e0 * math.exp(-PI2 / 12), rel=1e-14)
    assert float(k.exp_neg_pi2_over_6) == pytest.approx(math.exp(-PI2 / 6), rel=1e-14)
    assert float(k.lambda_unlabelled) == pytest.approx(PI2 / 6, rel=1e-15)
    assert float(k.lambda_labelled) == pytest.approx(PI2 / 12, rel=1e-15)


def test_constants_reported_values():
    k = constants()
    assert abs(k.c0 - mpmath.mpf("2.70433")) < 5e-6
    assert abs(k.e0 - mpmath.mpf("1.18814")) < 5e-6
    assert abs(k.d0 - mpmath.mpf("0.52200")) < 5e-6
    assert abs(k.exp_neg_pi2_over_6 - mpmath.mpf("0.193025")) < 5e-7


@pytest.mark.parametrize("bits", [64, 128, 256, 512])
def test_constant_identities(bits):
    k = constants(bits)
    tol = mpmath.mpf(2) ** (-bits + 4)
    with mpmath.workprec(bits + 64):
        half = mpmath.exp(mpmath.pi() ** 2 / 12)
        assert abs(k.d0 - k.c0 * k.exp_neg_pi2_over_6) / k.d0 <= tol
        assert abs(k.e0 - k.d0 * half) / k.e0 <= tol
        assert abs(k.c0 - k.e0 * half) / k.c0 <= tol


def test_constants_reject_low_precision():
    with pytest.raises(ValueError):
        constants(32)


def test_scaled_ratio_small(table12):
    expected = 217 / (720 * math.sqrt(6) * (6 / PI2) ** 6)
    got = scaled_ratio("unlabelled", 6, table12)
    assert float(got) == pytest.approx(expected, rel=1e-13)
    assert abs(got - mpmath.mpf("2.4375")) < 1e-4
    lab = scaled_ratio("labelled", 5, table12)
    assert float(lab) == pytest.approx(3451 / (120**2 * math.sqrt(5) * (6 / PI2) ** 5), rel=1e-13)


def test_scaled_ratio_kinds_consistent(table200):
    with mpmath.workprec(256):
        for n in (1, 7, 50, 200):
            q = scaled_ratio("rigid", n, table200) / scaled_ratio("unlabelled", n, table200)
            exact = mpmath.mpf(table200.r_seq[n]) / table200.i_seq[n]
            assert abs(q / exact - 1) < mpmath.mpf(2) ** -240


def test_scaled_ratio_rejects(table12):
    with pytest.raises(ValueError):
        scaled_ratio("bogus", 3, table12)
    with pytest.raises(ValueError):
        scaled_ratio("rigid", 13, table12)
    with pytest.raises(ValueError):
        scaled_ratio("rigid", 0, table12)


@pytest.mark.parametrize("bits", [64, 256])
@pytest.mark.parametrize("ns", [(100, 150, 200), (10, 20, 40, 80, 160)])
def test_fit_recovers_synthetic(bits, ns):
    with mpmath.workprec(bits + 32):
        a = [mpmath.mpf(3) / 7, -mpmath.pi(), +mpmath.e]
        values = [a[0] + a[1] / n + a[2] / n**2 for n in ns]
    fit = fit_expansion(ns, values, bits)
    tol = mpmath.mpf(2) ** (-bits + 8)
    # coefficients are recovered to the working precision, scaled by conditioning in n
    scale = [1, max(ns), max(ns) ** 2]
    for got, want, s in zip((fit.a0, fit.a1, fit.a2), a, scale):
        assert abs(got - want) <= tol * s
    assert fit.residual <= tol


def test_fit_constant_sequence():
    fit = fit_expansion([5, 9, 11], [7, 7, 7])
    assert fit.a0 == 7
    assert abs(fit.a1) < mpmath.mpf(2) ** -200
    assert abs(fit.a2) < mpmath.mpf(2) ** -200


def test_fit_rejects_bad_points():
    with pytest.raises(ValueError):
        fit_expansion([5, 5, 6], [1, 1, 1])
    with pytest.raises(ValueError):
        fit_expansion([5, 6], [1, 1])


def test_extrapolated_leading_constants(table200):
    k = constants()
    for kind in asy.KINDS:
        fit = extrapolate(kind, [100, 150, 200], table200)
        assert abs(fit.a0 / k.leading(kind) - 1) <= asy.A0_REL_TOL


def test_d1_synthetic_exact():
    k = constants()
    ns = (40, 70, 100)
    with mpmath.workprec(300):
        c1 = mpmath.mpf("-1.5")
        d1 = (c1 + k.lambda_unlabelled * 6 / 4 * k.c0) * k.exp_neg_pi2_over_6
        c_fit = fit_expansion(ns, [k.c0 + c1 / n for n in ns])
        r_fit = fit_expansion(ns, [k.d0 + d1 / n for n in ns])
    check = d1_consistency(c_fit, r_fit, k)
    assert check.relative_gap < mpmath.mpf(2) ** -200


def test_d1_requires_same_points(table200):
    k = constants()
    a = extrapolate("unlabelled", [100, 150, 200], table200)
    b = extrapolate("rigid", [90, 150, 200], table200)
    with pytest.raises(ValueError):
        d1_consistency(a, b, k)


def test_d1_gap_shrinks(table200):
    k = constants()
    gaps = []
    for pts in ((25, 37, 50), (50, 75, 100), (100, 150, 200)):
        c = extrapolate("unlabelled", pts, table200)
        r = extrapolate("rigid", pts, table200)
        gaps.append(d1_consistency(c, r, k).relative_gap)
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] <= asy.D1_REL_GAP_TOL


def test_hsu_j0_and_j1_exact(table200):
    for n in range(2, 201):
        h0 = hsu_check(n, 0, table200)
        assert h0.ratio_leading == h0.ratio_corrected == 1
        h1 = hsu_check(n, 1, table200)
        assert h1.ratio_corrected == 1
        assert h1.ratio_leading == Fraction(n, n - 1)


def test_hsu_correction_improves(table200):
    for j in (2, 3):
        h = hsu_check(200, j, table200)
        assert abs(h.ratio_corrected - 1) * 10 < abs(h.ratio_leading - 1)


def test_hsu_rejects(table12):
    with pytest.raises(ValueError):
        hsu_check(5, 5, table12)


def test_matchings_examples():
    assert matchings_lower(4, 1) == 6
    assert matchings_lower(4, 2) == 3
    assert matchings_lower(4, 3) == 0
    assert matchings_lower(0, 0) == 1


@pytest.mark.parametrize("n", range(0, 9))
def test_matchings_against_enumeration(n):
    for j in range(n // 2 + 1):
        assert matchings_lower(n, j) == partitions_small_blocks(n, n - j)


def test_matchings_bound_stirling(table200):
    for n in range(1, 201):
        for j in range(0, min(n, 6)):
            m, s = matchings_lower(n, j), table200.S(n, n - j)
            assert m <= s
            assert (m == s) == (j <= 1)


def test_matchings_ratio_approaches_one(table200):
    for j in (1, 2, 3):
        prev = None
        for n in (25, 50, 100, 200):
            gap = 1 - Fraction(matchings_lower(n, j), table200.S(n, n - j))
            assert prev is None or gap <= prev
            prev = gap
        assert prev <= asy.MATCHINGS_REL_TOL
