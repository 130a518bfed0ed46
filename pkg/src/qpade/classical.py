"""The classical (q = 1) polylogarithm Padé problem over Q.

Coding polynomial Pi(s) = (s - rho)_rho (s + n + 1)_sigma, elementary
fractions p[j,t] / (s + t)^j with poles at s = 0, -1, ..., -n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterator

from .core import ConstraintError
from .exact import Poly, TruncatedSeries, log_series_at_one
from .linalg import solve
from .qspecial import classical_pochhammer


@dataclass(frozen=True)
class ClassicalProblem:
    A: int
    n: int
    rho: int = 0
    sigma: int = 0

    def __post_init__(self):
        if self.A < 1 or self.n < 0 or min(self.rho, self.sigma) < 0:
            raise ConstraintError("need A >= 1 and n, rho, sigma >= 0")
        if self.rho + self.sigma + 2 > self.A * (self.n + 1):
            raise ConstraintError(
                f"constraint rho + sigma + 2 <= A(n+1) fails for "
                f"A={self.A}, n={self.n}, rho={self.rho}, sigma={self.sigma}"
            )

    @property
    def size(self) -> int:
        return self.A * (self.n + 1)

    @property
    def required_i_order(self) -> int:
        """Order of vanishing of I at z = 1 demanded by the problem statement."""
        return self.size - self.rho - self.sigma - 2


def valid_classical_problems(max_size: int) -> Iterator[ClassicalProblem]:
    for size in range(2, max_size + 1):
        for A in range(1, size + 1):
            if size % A:
                continue
            for rho in range(size - 1):
                for sigma in range(size - 1 - rho):
                    yield ClassicalProblem(A, size // A - 1, rho, sigma)


@dataclass(frozen=True)
class ClassicalSolution:
    problem: ClassicalProblem
    Pi: Poly
    table: dict  # (j, t) -> Fraction
    P: tuple[Poly, ...]
    P0: Poly
    P0bar: Poly

    def P_j(self, j: int) -> Poly:
        return self.P[j - 1]


def _s() -> Poly:
    return Poly([Fraction(0), Fraction(1)], "s")


def classical_pi(problem: ClassicalProblem) -> Poly:
    s = _s()
    return classical_pochhammer(s - problem.rho, problem.rho) * classical_pochhammer(s + problem.n + 1, problem.sigma)


def _elementary_numerators(A: int, n: int) -> dict[tuple[int, int], Poly]:
    s = _s()
    out = {}
    for t in range(n + 1):
        rest = Poly([Fraction(1)], "s")
        for u in range(n + 1):
            if u != t:
                rest = rest * (s + u) ** A
        for j in range(1, A + 1):
            out[(j, t)] = rest * (s + t) ** (A - j)
    return out


def reconstruct_classical_pi(solution: ClassicalSolution) -> Poly:
    basis = _elementary_numerators(solution.problem.A, solution.problem.n)
    out = Poly([], "s")
    for key, p in solution.table.items():
        out = out + basis[key] * p
    return out


def build_classical(problem: ClassicalProblem) -> ClassicalSolution:
    A, n = problem.A, problem.n
    Pi = classical_pi(problem)
    basis = _elementary_numerators(A, n)
    cols = [(j, t) for j in range(1, A + 1) for t in range(n + 1)]
    matrix = [[basis[c][i] for c in cols] for i in range(problem.size)]
    x = solve(matrix, [Pi[i] for i in range(problem.size)])
    table = dict(zip(cols, x))
    P = tuple(Poly([table[(j, t)] for t in range(n + 1)], "z") for j in range(1, A + 1))

    # P0 cancels the z^0..z^(n-1) part of sum_j P_j(z) Li_j(1/z)
    p0 = []
    for d in range(n):
        k = -d
        p0.append(-sum((table[(j, t)] / Fraction(k + t) ** j for j in range(1, A + 1) for t in range(max(0, 1 - k), n + 1)), Fraction(0)))
    # P0bar cancels the z^0..z^n part of sum_j (-1)^j P_j(z) Li_j(z)
    p0bar = []
    for m in range(n + 1):
        p0bar.append(-sum(((-1) ** j * table[(j, t)] / Fraction(m - t) ** j for j in range(1, A + 1) for t in range(m)), Fraction(0)))
    return ClassicalSolution(problem, Pi, table, P, Poly(p0, "z"), Poly(p0bar, "z"))


def s_coefficient_closed(problem: ClassicalProblem, k: int) -> Fraction:
    p = problem
    num = classical_pochhammer(k - p.rho, p.rho) * classical_pochhammer(k + p.n + 1, p.sigma)
    return Fraction(num, classical_pochhammer(k, p.n + 1) ** p.A)


def evaluate_R(solution: ClassicalSolution, s: Fraction) -> Fraction:
    """R(s) = sum p[j,t] / (s + t)^j."""
    return sum((p / Fraction(s + t) ** j for (j, t), p in solution.table.items() if p), Fraction(0))


def s_coefficient_via_table(solution: ClassicalSolution, k: int) -> Fraction:
    """Coefficient of z^-k in S(z) = P0 + sum_j P_j(z) Li_j(1/z)."""
    return sum((p / Fraction(k + t) ** j for (j, t), p in solution.table.items() if p), Fraction(0))


def sbar_coefficient(solution: ClassicalSolution, k: int) -> Fraction:
    """Coefficient of z^(n+k) in Sbar(z) = P0bar + sum_j (-1)^j P_j(z) Li_j(z)."""
    m = solution.problem.n + k
    return sum(((-1) ** j * p / Fraction(m - t) ** j for (j, t), p in solution.table.items() if p), Fraction(0))


def i_series_at_one(solution: ClassicalSolution, order: int) -> TruncatedSeries:
    """I(z) = sum_j P_j(z) log^(j-1)(1/z) / (j-1)! in powers of z - 1, known below ``order``."""
    log = log_series_at_one(order)
    total = TruncatedSeries.zero(order, "z-1")
    power = TruncatedSeries([Fraction(1)], 0, order, "z-1")
    for j in range(1, solution.problem.A + 1):
        shifted = solution.P_j(j).taylor_shift(Fraction(1))
        pj = TruncatedSeries(shifted.coeffs, 0, order, "z-1")
        total = total + pj * power * Fraction(1, factorial(j - 1))
        power = (power * log).truncate(order)
    return total.truncate(order)


@dataclass(frozen=True)
class IVanishing:
    required_order: int
    observed_order: int
    coefficients: tuple[Fraction, ...]  # of (z-1)^0, (z-1)^1, ...

    @property
    def bound_holds(self) -> bool:
        """I = O((z-1)^required_order)."""
        return self.observed_order >= self.required_order

    @property
    def exact_at_required(self) -> bool:
        """First nonzero coefficient sits exactly at the required order."""
        return self.observed_order == self.required_order


def classical_I_vanishing(problem: ClassicalProblem, solution: ClassicalSolution) -> IVanishing:
    """Exact order of vanishing of I(z) at z = 1."""
    order = problem.required_i_order + 2
    while True:
        series = i_series_at_one(solution, order)
        coeffs = tuple(Fraction(series[m]) for m in range(order))
        nz = next((m for m, c in enumerate(coeffs) if c != 0), None)
        if nz is not None:
            return IVanishing(problem.required_i_order, nz, coeffs)
        if order > 4 * problem.size + 8:
            raise ArithmeticError("I(z) appears to vanish identically")
        order += problem.size


@dataclass
class ClassicalReport:
    problem: ClassicalProblem
    s_matches_closed: bool
    s_vanish: bool
    s_sharp: bool
    sbar_vanish: bool
    sbar_sharp: bool
    reconstruction: bool
    i_vanishing: IVanishing
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(
            (self.s_matches_closed, self.s_vanish, self.s_sharp, self.sbar_vanish, self.sbar_sharp,
             self.reconstruction, self.i_vanishing.bound_holds)
        )


def verify_classical(solution: ClassicalSolution, kmax: int = 10) -> ClassicalReport:
    p = solution.problem
    matches = all(s_coefficient_via_table(solution, k) == s_coefficient_closed(p, k) == evaluate_R(solution, k)
                  for k in range(1, kmax + 1))
    return ClassicalReport(
        problem=p,
        s_matches_closed=matches,
        s_vanish=all(s_coefficient_via_table(solution, k) == 0 for k in range(1, p.rho + 1)),
        s_sharp=s_coefficient_via_table(solution, p.rho + 1) != 0,
        sbar_vanish=all(sbar_coefficient(solution, k) == 0 for k in range(1, p.sigma + 1)),
        sbar_sharp=sbar_coefficient(solution, p.sigma + 1) != 0,
        reconstruction=reconstruct_classical_pi(solution) == solution.Pi,
        i_vanishing=classical_I_vanishing(p, solution),
    )
