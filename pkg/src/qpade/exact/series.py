"""Exact truncated Laurent series.

A series stores every coefficient for exponents ``start <= e < order``;
nothing is claimed at or beyond ``order``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

VARIABLES = ("z", "1/z", "z-1", "h", "1/s")


class TruncatedSeries:
    __slots__ = ("var", "start", "coeffs", "order")

    def __init__(self, coeffs: Sequence[Any], start: int = 0, order: int | None = None, var: str = "z"):
        if var not in VARIABLES:
            raise ValueError(f"unknown series variable {var!r}")
        cs = list(coeffs)
        if order is None:
            order = start + len(cs)
        known = max(order - start, 0)
        cs = cs[:known] + [0] * (known - len(cs))
        self.var = var
        self.start = start
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def zero(cls, order: int, var: str = "z") -> "TruncatedSeries":
        return cls((), 0, order, var)

    @classmethod
    def from_poly(cls, poly, order: int, var: str = "z") -> "TruncatedSeries":
        return cls(poly.coeffs, 0, order, var)

    def __getitem__(self, e: int) -> Any:
        """Coefficient of ``var**e``."""
        if e >= self.order:
            raise ValueError(f"coefficient of exponent {e} is beyond truncation order {self.order}")
        if e < self.start:
            return 0
        return self.coeffs[e - self.start]

    def valuation(self) -> int:
        """First exponent with a nonzero known coefficient, else ``order``."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return self.start + i
        return self.order

    def _check(self, other: "TruncatedSeries") -> None:
        if self.var != other.var:
            raise ValueError(f"series in {self.var!r} and {other.var!r} cannot be combined")

    def __add__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries([other], 0, self.order, self.var)
        self._check(other)
        order = min(self.order, other.order)
        start = min(self.start, other.start)
        return TruncatedSeries([self._at(e) + other._at(e) for e in range(start, order)], start, order, self.var)

    __radd__ = __add__

    def _at(self, e: int) -> Any:
        return self.coeffs[e - self.start] if self.start <= e < self.order else 0

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coeffs], self.start, self.order, self.var)

    def __sub__(self, other) -> "TruncatedSeries":
        return self + (-other)

    def __rsub__(self, other) -> "TruncatedSeries":
        return (-self) + other

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs], self.start, self.order, self.var)
        self._check(other)
        va, vb = self.valuation(), other.valuation()
        order = min(self.order + vb, other.order + va)
        start = va + vb
        out = [0] * max(order - start, 0)
        for i in range(va, self.order):
            a = self.coeffs[i - self.start]
            if a == 0:
                continue
            for j in range(vb, other.order):
                k = i + j - start
                if k >= len(out):
                    break
                b = other.coeffs[j - other.start]
                if b != 0:
                    out[k] = out[k] + a * b
        return TruncatedSeries(out, start, order, self.var)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the leading known coefficient must be nonzero."""
        v = self.valuation()
        if v >= self.order:
            raise ZeroDivisionError("series has no known nonzero coefficient")
        a = [self.coeffs[e - self.start] for e in range(v, self.order)]
        n = len(a)
        inv0 = 1 / a[0] if not isinstance(a[0], int) else Fraction(1, a[0])
        b = [inv0]
        for k in range(1, n):
            acc = 0
            for i in range(1, k + 1):
                if a[i] != 0:
                    acc = acc + a[i] * b[k - i]
            b.append(-acc * inv0)
        # relative precision n is preserved, shifted to exponent -v
        return TruncatedSeries(b, -v, n - v, self.var)

    def __truediv__(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self * (1 / Fraction(other) if isinstance(other, int) else 1 / other)

    def __pow__(self, e: int) -> "TruncatedSeries":
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return TruncatedSeries([1], 0, max(self.order - self.valuation(), 1), self.var)
        result = self
        for _ in range(e - 1):
            result = result * self
        return result

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, self.start, min(order, self.order), self.var)

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self.coeffs)!r}, start={self.start}, order={self.order}, var={self.var!r})"


def log_series_at_one(order: int) -> TruncatedSeries:
    """Taylor series of ``log(1/z)`` in powers of ``z - 1``, known below ``order``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    coeffs = [Fraction(0)] + [Fraction((-1) ** m, m) for m in range(1, order)]
    return TruncatedSeries(coeffs[:order], 0, order, "z-1")
