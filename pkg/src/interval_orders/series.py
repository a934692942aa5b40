"""Truncated power series with exact integer coefficients.

Only what the interval-order generating functions need: ring operations,
binomial powers of (1 +/- x), and composition with x/(1 +/- x).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable


@dataclass(frozen=True)
class TruncSeries:
    """Power series known modulo x^(order+1).

    ``coeffs[k]`` is the coefficient of x^k. The truncation order is part of
    the value: arithmetic between series of different orders is refused
    rather than silently truncated or padded.
    """

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError(f"order must be nonnegative, got {self.order}")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(
                f"expected {self.order + 1} coefficients, got {len(self.coeffs)}"
            )
        for c in self.coeffs:
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"coefficients must be int, got {type(c).__name__}")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], order: int | None = None) -> TruncSeries:
        """Build a series, zero-padding or truncating to ``order`` if given."""
        cs = list(coeffs)
        if order is None:
            order = len(cs) - 1
        cs = (cs + [0] * (order + 1 - len(cs)))[: order + 1]
        return cls(order, tuple(cs))

    @classmethod
    def zero(cls, order: int) -> TruncSeries:
        return cls(order, (0,) * (order + 1))

    @classmethod
    def one(cls, order: int) -> TruncSeries:
        return cls.from_coeffs([1], order)

    @classmethod
    def x(cls, order: int) -> TruncSeries:
        return cls.from_coeffs([0, 1], order)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None for the zero series."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def _check(self, other: TruncSeries) -> None:
        if not isinstance(other, TruncSeries):
            raise TypeError(f"expected TruncSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        return TruncSeries(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        return TruncSeries(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> TruncSeries:
        return TruncSeries(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other: TruncSeries) -> TruncSeries:
        return mul(self, other)

    def scale(self, c: int) -> TruncSeries:
        return TruncSeries(self.order, tuple(c * a for a in self.coeffs))

    def truncate(self, order: int) -> TruncSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncSeries(order, self.coeffs[: order + 1])


def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product truncated to the common order."""
    a._check(b)
    n = a.order + 1
    bc = b.coeffs
    out = [0] * n
    for i, ai in enumerate(a.coeffs):
        if not ai:
            continue
        for j in range(n - i):
            bj = bc[j]
            if bj:
                out[i + j] += ai * bj
    return TruncSeries(a.order, tuple(out))


def binomial_pow(sign: int, exponent: int, order: int) -> TruncSeries:
    """(1 + sign*x)**exponent for any integer exponent, truncated to ``order``.

    Negative exponents use (1 + s x)^(-i) = sum_k C(i+k-1, k) (-s x)^k, so
    the result stays integral.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if exponent >= 0:
        cs = [comb(exponent, k) * sign**k for k in range(min(exponent, order) + 1)]
        return TruncSeries.from_coeffs(cs, order)
    i = -exponent
    return TruncSeries(order, tuple(comb(i + k - 1, k) * (-sign) ** k for k in range(order + 1)))


def interval_gf(order: int) -> TruncSeries:
    """Fishburn series sum_n prod_{i<=n} (1 - (1-x)^i), exact through x^order."""
    return _product_sum(order, lambda i: TruncSeries.one(order) - binomial_pow(-1, i, order))


def rigid_gf(order: int) -> TruncSeries:
    """Rigid interval order series sum_n prod_{i<=n} (1 - (1+x)^(-i))."""
    return _product_sum(order, lambda i: TruncSeries.one(order) - binomial_pow(1, -i, order))


def _product_sum(order: int, factor) -> TruncSeries:
    # every factor has zero constant term, so the k-th partial product has
    # valuation >= k and products beyond index `order` vanish
    if order < 0:
        raise ValueError(f"order must be nonnegative, got {order}")
    prod = TruncSeries.one(order)
    total = prod
    for i in range(1, order + 1):
        prod = prod * factor(i)
        total = total + prod
    return total


def substitute_moebius(s: TruncSeries, sign: int) -> TruncSeries:
    """Compose ``s`` with x/(1 + sign*x), truncated to ``s.order``.

    Evaluated by Horner's rule on the inner series, so this is genuine series
    composition and not a closed-form binomial transform.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    order = s.order
    inner = mul(TruncSeries.x(order), binomial_pow(sign, -1, order))
    acc = TruncSeries.zero(order)
    for c in reversed(s.coeffs):
        acc = mul(acc, inner) + TruncSeries.one(order).scale(c)
    return acc

