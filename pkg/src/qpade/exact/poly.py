"""Dense univariate polynomials over an exact field.

The coefficient field is whatever the coefficients are: ``RatFunc`` on the
q-side, ``fractions.Fraction`` on the classical side.  Python ints mix with
both.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Sequence


def _is_zero(c: Any) -> bool:
    return c == 0


class Poly:
    """Polynomial in a named variable, coefficients ascending by degree."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[Any] = (), var: str = "s"):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def monomial(cls, degree: int, coeff: Any = 1, var: str = "s") -> "Poly":
        return cls([0] * degree + [coeff], var)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Any:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def leading(self) -> Any:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def padded(self, length: int) -> list[Any]:
        """Coefficient list padded with integer zeros to ``length`` entries."""
        if len(self.coeffs) > length:
            raise ValueError(f"degree {self.degree} does not fit in {length} coefficients")
        return list(self.coeffs) + [0] * (length - len(self.coeffs))

    # -- arithmetic ---------------------------------------------------

    def _wrap(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other], self.var)

    def __add__(self, other) -> "Poly":
        other = self._wrap(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other) -> "Poly":
        return self + (-self._wrap(other))

    def __rsub__(self, other) -> "Poly":
        return self._wrap(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if other == 0:
                return Poly((), self.var)
            return Poly([c * other for c in self.coeffs], self.var)
        if not self.coeffs or not other.coeffs:
            return Poly((), self.var)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if _is_zero(b):
                    continue
                out[i + j] = out[i + j] + a * b
        return Poly(out, self.var)

    def __rmul__(self, other) -> "Poly":
        return self * other

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1], self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division over the coefficient field."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = divisor.degree
        lead = divisor.leading()
        quot = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - dq - 1, -1, -1):
            c = rem[k + dq]
            if _is_zero(c):
                continue
            c = c / lead
            quot[k] = c
            for i, d in enumerate(divisor.coeffs):
                rem[k + i] = rem[k + i] - c * d
        return Poly(quot, self.var), Poly(rem[:dq], self.var)

    def divides(self, other: "Poly") -> bool:
        """True when ``self`` divides ``other`` exactly."""
        return other.divmod(self)[1].is_zero()

    def __call__(self, x: Any) -> Any:
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        """``self(inner(v))`` as a polynomial in ``inner``'s variable."""
        acc = Poly((), inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def taylor_shift(self, a: Any) -> "Poly":
        """Coefficients of ``self(a + h)`` in powers of ``h``."""
        return self.compose(Poly([a, 1], "h"))

    def map_coeffs(self, fn) -> "Poly":
        return Poly([fn(c) for c in self.coeffs], self.var)

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    # -- comparison ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return self.coeffs == Poly([other]).coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)


def poly_product(factors: Sequence[Poly], var: str = "s") -> Poly:
    out = Poly([1], var)
    for f in factors:
        out = out * f
    return out


def fraction_poly(coeffs: Iterable[Any], var: str = "z") -> Poly:
    return Poly([Fraction(c) for c in coeffs], var)
