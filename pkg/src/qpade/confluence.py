"""The q -> 1 limit of the q-side solution.

Exact limits are taken in Q(q): multiply by a power of (1 - q), reduce, and
evaluate at q = 1.  Floating point only appears in ``numeric_confluence``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .classical import ClassicalProblem, ClassicalSolution, build_classical
from .classical import s_coefficient_closed as classical_s_coefficient
from .core import PadeProblem, PadeSolution, build_solution, s_coefficient_closed
from .exact import Poly, PoleError, RatFunc, TruncatedSeries, evaluate, valuation_at_one
from .qspecial import classical_pochhammer, geometric_tail_bound

ONE_MINUS_Q = RatFunc.one_minus_q_power(1)


def classical_of(problem: PadeProblem) -> ClassicalProblem:
    return ClassicalProblem(problem.A, problem.n, problem.rho, problem.sigma)


def scaling_exponent(problem: PadeProblem) -> int:
    """A(n+1) - sigma - rho, the power of (1 - q) that normalizes S and Sbar."""
    return problem.size - problem.sigma - problem.rho


def scaled_limit(f: RatFunc, exponent: int) -> Fraction:
    """lim_{q -> 1} (1 - q)^exponent f(q); raises PoleError if it does not exist."""
    if f.is_zero():
        return Fraction(0)
    return evaluate(f * ONE_MINUS_Q**exponent, 1)


# -- pole orders ---------------------------------------------------------


@dataclass
class PoleOrderReport:
    bounds: dict[int, int]  # j -> A(n+1) - sigma - rho - j
    orders: dict[tuple[int, int], int]  # (j, t) -> -valuation at q = 1, nonzero entries only
    strict_entries: list[tuple[int, int]] = field(default_factory=list)

    @property
    def bound_holds(self) -> bool:
        return all(o <= self.bounds[j] for (j, _), o in self.orders.items())

    def attained(self, j: int) -> bool:
        return any(o == self.bounds[j] for (jj, _), o in self.orders.items() if jj == j)


def pole_order_certify(solution: PadeSolution) -> PoleOrderReport:
    e = scaling_exponent(solution.problem)
    bounds = {j: e - j for j in range(1, solution.problem.A + 1)}
    orders = {(j, t): -valuation_at_one(p) for j, t, p in solution.table.items() if p}
    strict = sorted(k for k, o in orders.items() if o < bounds[k[0]])
    return PoleOrderReport(bounds, orders, strict)


# -- exact limits --------------------------------------------------------


@dataclass(frozen=True)
class LimitPolynomials:
    Q: tuple[Poly, ...]  # Q[j-1] = Q_j
    Q0: Poly
    Q0bar: Poly


def q_limit_solution(solution: PadeSolution) -> LimitPolynomials:
    """Q_j = lim (1-q)^(e-j) P_j, and Q0, Q0bar = lim (1-q)^e P0, P0bar, with e = A(n+1)-sigma-rho."""
    e = scaling_exponent(solution.problem)
    Q = tuple(solution.P_j(j).map_coeffs(lambda c, j=j: scaled_limit(c, e - j)) for j in range(1, solution.problem.A + 1))
    Q0 = solution.P0.map_coeffs(lambda c: scaled_limit(c, e))
    Q0bar = solution.P0bar.map_coeffs(lambda c: scaled_limit(c, e))
    return LimitPolynomials(Q, Q0, Q0bar)


def s_coefficient_limit(problem: PadeProblem, k: int) -> Fraction:
    return scaled_limit(s_coefficient_closed(problem, k), scaling_exponent(problem))


# -- derivative formula for p[j,t] ---------------------------------------


def local_expansion(solution: PadeSolution, t: int) -> TruncatedSeries:
    """Taylor series at s = q^-t of F(s) = (1 - s q^t)^A Pi(s) / (s;q)_{n+1}^A, in h = s - q^-t."""
    A, n = solution.problem.A, solution.problem.n
    order = A
    s0 = RatFunc.q_power(-t)
    shifted = solution.Pi.taylor_shift(s0)
    F = TruncatedSeries(shifted.coeffs, 0, order, "h")
    for u in range(n + 1):
        if u == t:
            continue
        qu = RatFunc.q_power(u)
        # 1 - (s0 + h) q^u
        lin = TruncatedSeries([1 - s0 * qu, -qu], 0, order, "h")
        F = F * lin.inverse() ** A
    return F


@dataclass(frozen=True)
class DerivativeEntry:
    j: int
    t: int
    table_value: RatFunc
    literal: RatFunc  # prefactor q^(t(A-j-1)), derivatives taken at s = q^-t
    substituted: RatFunc  # prefactor q^(t(A-j-1)), derivatives in u = s q^t taken at u = 1
    corrected: RatFunc  # prefactor q^(-t(A-j+1)), derivatives at s = q^-t

    @property
    def literal_agrees(self) -> bool:
        return self.literal == self.table_value

    @property
    def substituted_agrees(self) -> bool:
        return self.substituted == self.table_value

    @property
    def corrected_agrees(self) -> bool:
        return self.corrected == self.table_value


@dataclass
class DerivativeReport:
    entries: list[DerivativeEntry]

    @property
    def corrected_agrees(self) -> bool:
        return all(e.corrected_agrees for e in self.entries)

    @property
    def literal_agrees(self) -> bool:
        return all(e.literal_agrees for e in self.entries)

    @property
    def substituted_agrees(self) -> bool:
        return all(e.substituted_agrees for e in self.entries)

    def disagreements(self) -> list[tuple[int, int]]:
        return [(e.j, e.t) for e in self.entries if not e.literal_agrees]


def derivative_formula_crosscheck(solution: PadeSolution) -> DerivativeReport:
    """p[j,t] from (A-j)-th derivatives of F at the pole s = q^-t.

    Three readings are compared against the linear-solve table.  The literal
    one uses the prefactor (-1)^(A-j) q^(t(A-j-1)) / (A-j)! with s-derivatives
    at the pole.  The substituted one keeps that prefactor but differentiates
    G(u) = F(u q^-t) at u = 1.  The corrected one uses (-1)^(A-j) q^(-t(A-j+1)) / (A-j)!
    with s-derivatives at the pole, which is what the chain rule in
    1 - s q^t produces; it is the only reading that agrees for every entry.
    """
    A = solution.problem.A
    out = []
    for t in range(solution.problem.n + 1):
        F = local_expansion(solution, t)
        for j in range(1, A + 1):
            m = A - j
            # m-th derivative at the pole is m! times the Taylor coefficient
            deriv = F[m] * factorial(m)
            sign = (-1) ** m
            literal = sign * RatFunc.q_power(t * (A - j - 1)) * deriv / factorial(m)
            # d^m/du^m G at u = 1 is q^(-tm) times the s-derivative at the pole
            substituted = literal * RatFunc.q_power(-t * m)
            corrected = sign * RatFunc.q_power(-t * (A - j + 1)) * deriv / factorial(m)
            out.append(DerivativeEntry(j, t, solution.table[j, t], literal, substituted, corrected))
    return DerivativeReport(out)


# -- full report ---------------------------------------------------------


@dataclass
class ConfluenceReport:
    problem: PadeProblem
    poles: PoleOrderReport
    limits: LimitPolynomials
    classical: ClassicalSolution
    q_matches: bool
    q0bar_matches: bool
    q0_matches: bool
    s_limit_matches: bool
    derivative: DerivativeReport | None = None

    @property
    def passed(self) -> bool:
        per_j = all(
            self.poles.attained(j) for j in range(1, self.problem.A + 1) if not self.limits.Q[j - 1].is_zero()
        )
        ok = self.q_matches and self.q0_matches and self.q0bar_matches and self.s_limit_matches and self.poles.bound_holds and per_j
        if self.derivative is not None:
            ok = ok and self.derivative.corrected_agrees
        return ok


def confluence_report(problem: PadeProblem, solution: PadeSolution | None = None,
                      with_derivatives: bool = True, kmax: int = 10) -> ConfluenceReport:
    if solution is None:
        solution = build_solution(problem)
    cp = classical_of(problem)
    classical = build_classical(cp)
    limits = q_limit_solution(solution)
    return ConfluenceReport(
        problem=problem,
        poles=pole_order_certify(solution),
        limits=limits,
        classical=classical,
        q_matches=limits.Q == classical.P,
        q0bar_matches=limits.Q0bar == classical.P0bar,
        q0_matches=limits.Q0 == classical.P0,
        s_limit_matches=all(
            s_coefficient_limit(problem, k) == classical_s_coefficient(cp, k) for k in range(1, kmax + 1)
        ),
        derivative=derivative_formula_crosscheck(solution) if with_derivatives else None,
    )


# -- numeric demonstrations ----------------------------------------------


class TruncationError(ArithmeticError):
    """Truncated sum whose certified tail bound exceeds the tolerance."""


def _q_bracket(m: int, log_q: float, one_minus_q: float) -> float:
    """(1 - q^m) / (1 - q) for integer m >= 1, without cancellation."""
    return -math.expm1(m * log_q) / one_minus_q


def _scaled_s_term(problem: PadeProblem, k: int, q0: float) -> float:
    """(1-q)^(A(n+1)-sigma-rho) times the z^-k coefficient of S(z;q)."""
    p = problem
    log_q = math.log(q0)
    omq = -math.expm1(log_q)
    num = 1.0
    for i in range(p.rho):
        m = k - p.rho + i
        if m == 0:
            return 0.0
        num *= _q_bracket(m, log_q, omq)
    for i in range(p.sigma):
        num *= _q_bracket(k + p.n + 1 + i, log_q, omq)
    den = 1.0
    for i in range(p.n + 1):
        den *= _q_bracket(k + i, log_q, omq)
    return math.exp(k * (p.nu + 1) * log_q) * num / den**p.A


def _numerator_bound(problem: PadeProblem, k: int) -> float:
    # [m]_q <= m in the numerator, [m]_q >= 1 in the denominator, q^(...) <= 1
    return float(abs(classical_pochhammer(k - problem.rho, problem.rho)) * classical_pochhammer(k + problem.n + 1, problem.sigma))


def _tail(problem: PadeProblem, z0: float, start: int) -> float:
    shift = problem.n + problem.sigma + 1

    def term(k: int) -> float:
        return _numerator_bound(problem, k) / z0**k

    def ratio(k: int) -> float:
        # b_(k+1)/b_k <= ((k + 1 + shift) / (k + 1 - rho))^(rho+sigma) / z0, decreasing in k
        lo = max(k + 1 - problem.rho, 1)
        return ((k + 1 + shift) / lo) ** (problem.rho + problem.sigma) / z0

    return geometric_tail_bound(term, ratio, start)


def scaled_s_numeric(problem: PadeProblem, z0: float, q0: float, terms: int) -> tuple[float, float]:
    """(1-q)^(A(n+1)-sigma-rho) S(z0; q0) truncated after ``terms`` terms, with a tail bound."""
    value = math.fsum(_scaled_s_term(problem, k, q0) * z0 ** (-k) for k in range(1, terms + 1))
    return value, _tail(problem, z0, terms + 1)


def classical_s_numeric(problem: ClassicalProblem | PadeProblem, z0: float, terms: int) -> tuple[float, float]:
    cp = problem if isinstance(problem, ClassicalProblem) else classical_of(problem)
    value = math.fsum(float(classical_s_coefficient(cp, k)) * z0 ** (-k) for k in range(1, terms + 1))
    return value, _tail(PadeProblem(cp.A, cp.n, cp.rho, cp.sigma, 0), z0, terms + 1)


def scaled_i_numeric(solution: PadeSolution, z0: float, q0: Fraction) -> float:
    """(1-q)^(A(n+1)-sigma-rho-1) I(z0; q0) with I = -sum_j P_j(z0) (-log_q(1/z0))_{j-1}/(j-1)!."""
    p = solution.problem
    q = float(q0)
    x = -math.log(1 / z0) / math.log(q)
    total = 0.0
    for j in range(1, p.A + 1):
        pj = solution.P_j(j).map_coeffs(lambda c: float(evaluate(c, q0)))
        total += pj(z0) * classical_pochhammer(x, j - 1) / factorial(j - 1)
    return -(1 - q) ** (scaling_exponent(p) - 1) * total


def classical_i_numeric(solution: ClassicalSolution, z0: float) -> float:
    L = math.log(1 / z0)
    return sum(float(solution.P_j(j)(Fraction(z0))) * L ** (j - 1) / factorial(j - 1)
               for j in range(1, solution.problem.A + 1))


@dataclass(frozen=True)
class NumericSample:
    q: float
    scaled_s: float
    s_tail_bound: float
    classical_s: float
    s_error: float
    scaled_i: float
    minus_classical_i: float
    i_error: float
    scaled_log_q: float  # (1 - q) log_q(z0)
    minus_log: float


def numeric_confluence(problem: PadeProblem, z0: float = 2.0, q_list: Sequence[float] = (0.9, 0.99, 0.999),
                       terms: int = 400, tolerance: float = 1e-12) -> list[NumericSample]:
    if not z0 > 1:
        raise ValueError("z0 must be > 1")
    if any(not 0 < q < 1 for q in q_list):
        raise ValueError("every q must lie in (0, 1)")
    solution = build_solution(problem)
    classical = build_classical(classical_of(problem))
    ref, ref_tail = classical_s_numeric(problem, z0, terms)
    if ref_tail > tolerance:
        raise TruncationError(f"tail bound {ref_tail:.3g} exceeds tolerance {tolerance:.3g}; increase terms")
    ref_i = classical_i_numeric(classical, z0)
    out = []
    for q in q_list:
        val, tail = scaled_s_numeric(problem, z0, q, terms)
        if tail > tolerance:
            raise TruncationError(f"tail bound {tail:.3g} exceeds tolerance {tolerance:.3g}; increase terms")
        qi = scaled_i_numeric(solution, z0, Fraction(str(q)))
        out.append(NumericSample(
            q=q, scaled_s=val, s_tail_bound=tail, classical_s=ref, s_error=abs(val - ref),
            scaled_i=qi, minus_classical_i=-ref_i, i_error=abs(qi + ref_i),
            scaled_log_q=(1 - q) * math.log(z0) / math.log(q), minus_log=-math.log(z0),
        ))
    return out
