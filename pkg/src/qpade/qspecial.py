"""q-Pochhammer symbols, q-polylogarithm coefficients and the numeric q-zeta series."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

from .exact import Poly, RatFunc


@dataclass(frozen=True)
class PochhammerSpec:
    """The product (1 - s q^offset)(1 - s q^(offset+1)) ... over ``length`` factors."""

    offset: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("q-Pochhammer length must be nonnegative")


def q_pochhammer_poly(spec: PochhammerSpec, var: str = "s") -> Poly:
    out = Poly([1], var)
    for i in range(spec.length):
        out = out * Poly([1, -RatFunc.q_power(spec.offset + i)], var)
    return out


def q_pochhammer_value(a_exp: int, m: int) -> RatFunc:
    """(q^a_exp; q)_m as an element of Q(q)."""
    out = RatFunc(1)
    for i in range(m):
        out = out * RatFunc.one_minus_q_power(a_exp + i)
    return out


@lru_cache(maxsize=None)
def qpolylog_coeff(j: int, k: int) -> RatFunc:
    """Coefficient of z^k in the base-q polylogarithm of order j: q^k / (1 - q^k)^j."""
    if j < 1:
        raise ValueError(f"polylogarithm order must be >= 1, got {j}")
    if k < 1:
        raise ValueError(f"series index must be >= 1, got {k}")
    return RatFunc.q_power(k) / RatFunc.one_minus_q_power(k) ** j


@lru_cache(maxsize=None)
def qpolylog_recip_coeff(j: int, k: int) -> RatFunc:
    """Coefficient of z^k in the base-1/q polylogarithm of order j.

    This is q^-k / (1 - q^-k)^j, which normalizes to (-1)^j q^(k(j-1)) / (1 - q^k)^j.
    """
    if j < 1:
        raise ValueError(f"polylogarithm order must be >= 1, got {j}")
    if k < 1:
        raise ValueError(f"series index must be >= 1, got {k}")
    return (-1) ** j * RatFunc.q_power(k * (j - 1)) / RatFunc.one_minus_q_power(k) ** j


def classical_pochhammer(a, m: int):
    """Rising factorial a(a+1)...(a+m-1); ``a`` may be a number or a ``Poly``."""
    if m < 0:
        raise ValueError("Pochhammer length must be nonnegative")
    if isinstance(a, Poly):
        out = Poly([1], a.var)
        for i in range(m):
            out = out * (a + i)
        return out
    out = 1
    for i in range(m):
        out *= a + i
    return out


Real = Union[int, float, Fraction]


def geometric_tail_bound(term: Callable[[int], float], ratio: Callable[[int], float], start: int, cap: int = 10**7) -> float:
    """Upper bound for sum_{k >= start} term(k) with nonnegative terms.

    ``ratio(k)`` must bound term(k+1)/term(k) from above and be nonincreasing in
    k.  Terms are added explicitly until the ratio drops below 1, after which the
    rest is dominated by a geometric series.
    """
    explicit = []
    k = start
    while ratio(k) >= 1.0:
        explicit.append(term(k))
        k += 1
        if k - start > cap:
            raise ArithmeticError("tail bound did not become geometric")
    r = ratio(k)
    return math.fsum(explicit) + term(k) / (1.0 - r)


def q_zeta_partial(s: int, q0: Real, terms: int) -> tuple[float, float]:
    """Partial sum of sum_k k^(s-1) q^k / (1 - q^k) over k <= terms, and a tail bound."""
    if s < 1:
        raise ValueError("s must be a positive integer")
    q0 = float(q0)
    if not 0.0 < q0 < 1.0:
        raise ValueError(f"q0 must lie in (0, 1), got {q0}")
    if terms < 0:
        raise ValueError("terms must be nonnegative")
    log_q = math.log(q0)
    total = math.fsum(k ** (s - 1) * q0**k / -math.expm1(k * log_q) for k in range(1, terms + 1))

    # k^(s-1) q^k / (1 - q^k) <= k^(s-1) q^k / (1 - q)
    def bound_term(k: int) -> float:
        return k ** (s - 1) * q0**k / (1.0 - q0)

    def bound_ratio(k: int) -> float:
        return ((k + 1) / k) ** (s - 1) * q0

    return total, geometric_tail_bound(bound_term, bound_ratio, terms + 1)
