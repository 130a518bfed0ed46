"""Reduced rational functions in a formal variable ``q`` with rational coefficients.

Numerator and denominator are integer polynomials (``flint.fmpz_poly``) kept in
canonical form: their gcd in Z[q] is 1 and the leading coefficient of the
denominator is positive.  Equality is therefore structural.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from flint import fmpq, fmpz_poly

Scalar = Union[int, Fraction]

_ONE = fmpz_poly([1])
_ZERO = fmpz_poly([])
# q - 1; its order divides out the same multiplicity as 1 - q
_Q_MINUS_ONE = fmpz_poly([-1, 1])


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at one of its poles."""


def _canonical(num: fmpz_poly, den: fmpz_poly) -> tuple[fmpz_poly, fmpz_poly]:
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return _ZERO, _ONE
    g = num.gcd(den)
    if not g.is_one():
        num = num // g
        den = den // g
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return num, den


class RatFunc:
    """Element of Q(q) in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        num_p = _as_poly_pair(num)
        den_p = _as_poly_pair(den)
        # each argument may itself carry a denominator (Fraction / RatFunc)
        n = num_p[0] * den_p[1]
        d = num_p[1] * den_p[0]
        self.num, self.den = _canonical(n, d)
        self._hash = None

    @classmethod
    def _raw(cls, num: fmpz_poly, den: fmpz_poly) -> "RatFunc":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def _reduced(cls, num: fmpz_poly, den: fmpz_poly) -> "RatFunc":
        return cls._raw(*_canonical(num, den))

    # -- constructors -------------------------------------------------

    @classmethod
    def q(cls) -> "RatFunc":
        return cls._raw(fmpz_poly([0, 1]), _ONE)

    @classmethod
    def q_power(cls, k: int) -> "RatFunc":
        """``q**k`` for any integer ``k``."""
        mono = fmpz_poly([0] * abs(k) + [1])
        return cls._raw(mono, _ONE) if k >= 0 else cls._raw(_ONE, mono)

    @classmethod
    def one_minus_q_power(cls, k: int) -> "RatFunc":
        """``1 - q**k`` for any integer ``k``."""
        if k >= 0:
            return cls._raw(fmpz_poly([1] + [0] * (k - 1) + [-1]) if k else _ZERO, _ONE)
        # 1 - q^-m = (q^m - 1) / q^m
        m = -k
        return cls._raw(fmpz_poly([-1] + [0] * (m - 1) + [1]), fmpz_poly([0] * m + [1]))

    # -- accessors ----------------------------------------------------

    @property
    def numerator_coeffs(self) -> tuple[int, ...]:
        """Ascending integer coefficients; empty for zero."""
        return tuple(int(c) for c in self.num.coeffs())

    @property
    def denominator_coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.den.coeffs())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def digits(self) -> int:
        """Total bit size of all coefficients (a cheap complexity measure)."""
        return sum(int(c).bit_length() for c in self.num.coeffs()) + sum(
            int(c).bit_length() for c in self.den.coeffs()
        )

    # -- arithmetic ---------------------------------------------------

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(-self.num, self.den)

    def __pos__(self) -> "RatFunc":
        return self

    def __add__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return RatFunc._reduced(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        if g.is_one():
            return RatFunc._reduced(self.num * other.den + other.num * self.den, self.den * other.den)
        a = other.den // g
        b = self.den // g
        return RatFunc._reduced(self.num * a + other.num * b, self.den * a)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc._raw(_ZERO, _ONE)
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1, d2 = (self.num, other.den) if g1.is_one() else (self.num // g1, other.den // g1)
        n2, d1 = (other.num, self.den) if g2.is_one() else (other.num // g2, self.den // g2)
        num = n1 * n2
        den = d1 * d2
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RatFunc._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RatFunc._raw(num, den)

    def __truediv__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int) -> "RatFunc":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return RatFunc._raw(_ONE, _ONE)
        return RatFunc._raw(self.num**e, self.den**e)

    # -- comparison ---------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.numerator_coeffs, self.denominator_coeffs))
        return self._hash

    # -- specialization -----------------------------------------------

    def __call__(self, q0: Scalar) -> Fraction:
        return evaluate(self, q0)

    def __repr__(self) -> str:
        return f"RatFunc({_poly_str(self.num)}, {_poly_str(self.den)})"

    def __str__(self) -> str:
        if self.den.is_one():
            return _poly_str(self.num)
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"


def _poly_str(p: fmpz_poly) -> str:
    coeffs = [int(c) for c in p.coeffs()]
    if not coeffs:
        return "0"
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}" if mono else str(abs(c))
        terms.append(("-" if c < 0 else "+", body))
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _as_poly_pair(x) -> tuple[fmpz_poly, fmpz_poly]:
    if isinstance(x, RatFunc):
        return x.num, x.den
    if isinstance(x, fmpz_poly):
        return x, _ONE
    if isinstance(x, int):
        return fmpz_poly([x]), _ONE
    if isinstance(x, Fraction):
        return fmpz_poly([x.numerator]), fmpz_poly([x.denominator])
    if isinstance(x, (list, tuple)):
        return fmpz_poly([int(c) for c in x]), _ONE
    raise TypeError(f"cannot interpret {type(x).__name__} as a rational function")


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, int):
        return RatFunc._raw(fmpz_poly([x]) if x else _ZERO, _ONE)
    if isinstance(x, Fraction):
        return RatFunc._reduced(fmpz_poly([x.numerator]), fmpz_poly([x.denominator]))
    return NotImplemented


def reduce(num: Sequence[int], den: Sequence[int]) -> RatFunc:
    """Canonical rational function from ascending integer coefficient lists."""
    return RatFunc._reduced(fmpz_poly([int(c) for c in num]), fmpz_poly([int(c) for c in den]))


def as_ratfunc(x) -> RatFunc:
    r = _coerce(x)
    if r is NotImplemented:
        raise TypeError(f"cannot interpret {type(x).__name__} as a rational function")
    return r


def _order_at_one(p: fmpz_poly) -> int:
    k = 0
    while not p.is_zero() and p(1) == 0:
        p = p // _Q_MINUS_ONE
        k += 1
    return k


def valuation_at_one(f: RatFunc) -> int:
    """Order of ``f`` at ``q = 1``; negative values are pole orders."""
    if f.is_zero():
        raise ValueError("valuation of the zero rational function is undefined")
    return _order_at_one(f.num) - _order_at_one(f.den)


def _eval_poly(p: fmpz_poly, q0: Fraction) -> Fraction:
    v = p(fmpq(q0.numerator, q0.denominator))
    return Fraction(int(v.p), int(v.q))


def evaluate(f: RatFunc, q0: Scalar) -> Fraction:
    """Exact value of ``f`` at the rational point ``q0``."""
    q0 = Fraction(q0)
    d = _eval_poly(f.den, q0)
    if d == 0:
        raise PoleError(f"q = {q0} is a pole of {f}")
    return _eval_poly(f.num, q0) / d


def rsum(terms: Iterable[RatFunc]) -> RatFunc:
    total = RatFunc()
    for t in terms:
        total = total + t
    return total
