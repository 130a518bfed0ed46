"""Canonical solution of the q-polylogarithm Padé problem and its verification.

Everything here is exact over Q(q).  The coding polynomial

    Pi(s) = (s q^-rho; q)_rho (s q^(n+1); q)_sigma s^nu

is split into elementary fractions q^t p[j,t] / (1 - s q^t)^j over the poles
s = q^-t, t = 0..n.  The table p[j,t] gives the approximant polynomials
P_j(z) = sum_t p[j,t] z^t, and the remaining polynomials P0, P0bar follow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Iterator, Sequence

from .exact import Poly, RatFunc, TruncatedSeries, rsum
from .linalg import solve
from .qspecial import (
    PochhammerSpec,
    classical_pochhammer,
    q_pochhammer_poly,
    q_pochhammer_value,
    qpolylog_coeff,
    qpolylog_recip_coeff,
)


class ConstraintError(ValueError):
    """Parameters outside the admissible range."""


@dataclass(frozen=True)
class PadeProblem:
    A: int
    n: int
    rho: int = 0
    sigma: int = 0
    nu: int = 0

    def __post_init__(self):
        if self.A < 1 or self.n < 0 or min(self.rho, self.sigma, self.nu) < 0:
            raise ConstraintError("need A >= 1 and n, rho, sigma, nu >= 0")
        if self.rho + self.sigma + self.nu + 2 > self.A * (self.n + 1):
            raise ConstraintError(
                f"constraint rho + sigma + nu + 2 <= A(n+1) fails: "
                f"{self.rho} + {self.sigma} + {self.nu} + 2 = {self.rho + self.sigma + self.nu + 2} "
                f"> {self.A * (self.n + 1)}"
            )

    @property
    def size(self) -> int:
        """A(n+1), the number of unknown coefficients."""
        return self.A * (self.n + 1)

    @property
    def window(self) -> range:
        """Exponents l at which I must vanish at z = q^-l."""
        return range(-self.nu, self.size - self.rho - self.sigma - self.nu - 1)

    @property
    def omega(self) -> int:
        """Order at infinity of Pi(s) / (s;q)_{n+1}^A."""
        return self.size - (self.rho + self.sigma + self.nu)

    def columns(self) -> list[tuple[int, int]]:
        return [(j, t) for j in range(1, self.A + 1) for t in range(self.n + 1)]


def valid_problems(max_size: int, nus: Sequence[int] | None = None) -> Iterator[PadeProblem]:
    """Every admissible (A, n, rho, sigma, nu) with A(n+1) <= max_size."""
    for size in range(2, max_size + 1):
        for A in range(1, size + 1):
            if size % A:
                continue
            n = size // A - 1
            for rho in range(size - 1):
                for sigma in range(size - 1 - rho):
                    for nu in range(size - 1 - rho - sigma):
                        if nus is not None and nu not in nus:
                            continue
                        yield PadeProblem(A, n, rho, sigma, nu)


@dataclass(frozen=True)
class CoefficientTable:
    """The entries p[j,t], j = 1..A, t = 0..n."""

    A: int
    n: int
    entries: tuple[tuple[RatFunc, ...], ...]

    def __getitem__(self, key: tuple[int, int]) -> RatFunc:
        j, t = key
        return self.entries[j - 1][t]

    def items(self) -> Iterator[tuple[int, int, RatFunc]]:
        for j in range(1, self.A + 1):
            for t in range(self.n + 1):
                yield j, t, self.entries[j - 1][t]

    def vector(self) -> list[RatFunc]:
        """Entries in (j, t) lexicographic order."""
        return [p for _, _, p in self.items()]

    @classmethod
    def from_vector(cls, A: int, n: int, values: Sequence) -> "CoefficientTable":
        vals = [v if isinstance(v, RatFunc) else RatFunc(v) for v in values]
        rows = tuple(tuple(vals[(j - 1) * (n + 1) + t] for t in range(n + 1)) for j in range(1, A + 1))
        return cls(A, n, rows)

    def perturbed(self, j: int, t: int, delta=1) -> "CoefficientTable":
        vals = self.vector()
        vals[(j - 1) * (self.n + 1) + t] = vals[(j - 1) * (self.n + 1) + t] + delta
        return CoefficientTable.from_vector(self.A, self.n, vals)


@dataclass(frozen=True)
class PadeSolution:
    problem: PadeProblem
    Pi: Poly
    table: CoefficientTable
    P: tuple[Poly, ...]  # P[j-1] is P_j
    P0: Poly
    P0bar: Poly

    def P_j(self, j: int) -> Poly:
        return self.P[j - 1]


# -- construction --------------------------------------------------------


def coding_factors(problem: PadeProblem) -> dict[str, Poly]:
    """The three factors of Pi, keyed by the parameter each one encodes."""
    p = problem
    return {
        "rho": q_pochhammer_poly(PochhammerSpec(-p.rho, p.rho)),
        "sigma": q_pochhammer_poly(PochhammerSpec(p.n + 1, p.sigma)),
        "nu": Poly.monomial(p.nu, RatFunc(1)),
    }


# condition group that each factor of Pi is responsible for
FACTOR_GROUP = {"rho": "S", "sigma": "Sbar", "nu": "I-"}


def build_pi(problem: PadeProblem) -> Poly:
    f = coding_factors(problem)
    return f["rho"] * f["sigma"] * f["nu"]


def pi_without(problem: PadeProblem, factor: str) -> Poly:
    """Pi with one of its factors removed."""
    if factor not in FACTOR_GROUP:
        raise ValueError(f"unknown factor {factor!r}")
    out = Poly([RatFunc(1)])
    for name, f in coding_factors(problem).items():
        if name != factor:
            out = out * f
    return out


def denominator_poly(A: int, n: int) -> Poly:
    """(s;q)_{n+1}^A."""
    return q_pochhammer_poly(PochhammerSpec(0, n + 1)) ** A


def elementary_numerators(A: int, n: int) -> dict[tuple[int, int], Poly]:
    """q^t (s;q)_{n+1}^A / (1 - s q^t)^j as polynomials in s."""
    linear = {u: Poly([1, -RatFunc.q_power(u)]) for u in range(n + 1)}
    others = {}
    for t in range(n + 1):
        rest = Poly([1])
        for u in range(n + 1):
            if u != t:
                rest = rest * linear[u] ** A
        others[t] = rest
    out = {}
    for t in range(n + 1):
        qt = RatFunc.q_power(t)
        for j in range(1, A + 1):
            out[(j, t)] = others[t] * linear[t] ** (A - j) * qt
    return out


def partial_fractions(Pi: Poly, A: int, n: int) -> CoefficientTable:
    """Split Pi(s)/(s;q)_{n+1}^A into elementary fractions q^t p[j,t]/(1 - s q^t)^j.

    Clears denominators and solves the square system obtained by equating the
    coefficients of s^0 .. s^(A(n+1)-1).
    """
    size = A * (n + 1)
    if Pi.degree >= size:
        raise ValueError(f"deg Pi = {Pi.degree} >= A(n+1) = {size}: a polynomial part would be required")
    basis = elementary_numerators(A, n)
    cols = [(j, t) for j in range(1, A + 1) for t in range(n + 1)]
    matrix = [[basis[c][i] for c in cols] for i in range(size)]
    rhs = [Pi[i] for i in range(size)]
    x = solve(matrix, rhs)
    return CoefficientTable.from_vector(A, n, x)


def reconstruct_pi(table: CoefficientTable) -> Poly:
    """Multiply the elementary fractions back by (s;q)_{n+1}^A."""
    basis = elementary_numerators(table.A, table.n)
    out = Poly([])
    for j, t, p in table.items():
        if p:
            out = out + basis[(j, t)] * p
    return out


def _p0_from_table(table: CoefficientTable) -> Poly:
    # coefficient of z^-k, k = 1-n..0, in sum_j P_j(z) Li_j(1/z; q)
    n = table.n
    coeffs = []
    for d in range(n):  # d = -k, power of z
        k = -d
        acc = rsum(
            qpolylog_coeff(j, k + t) * table[j, t]
            for j in range(1, table.A + 1)
            for t in range(max(0, 1 - k), n + 1)
        )
        coeffs.append(-acc)
    return Poly(coeffs, "z")


def _p0bar_from_table(table: CoefficientTable) -> Poly:
    # coefficients of z^0..z^n in sum_j P_j(z) Li_j(z; 1/q)
    coeffs = []
    for m in range(table.n + 1):
        acc = rsum(
            qpolylog_recip_coeff(j, m - t) * table[j, t]
            for j in range(1, table.A + 1)
            for t in range(0, m)
        )
        coeffs.append(-acc)
    return Poly(coeffs, "z")


def solution_from_table(problem: PadeProblem, table: CoefficientTable, Pi: Poly | None = None) -> PadeSolution:
    """Assemble P_j, P0 and P0bar from any coefficient table."""
    P = tuple(Poly([table[j, t] for t in range(problem.n + 1)], "z") for j in range(1, problem.A + 1))
    if Pi is None:
        Pi = reconstruct_pi(table)
    return PadeSolution(problem, Pi, table, P, _p0_from_table(table), _p0bar_from_table(table))


def build_solution(problem: PadeProblem) -> PadeSolution:
    Pi = build_pi(problem)
    table = partial_fractions(Pi, problem.A, problem.n)
    return solution_from_table(problem, table, Pi)


def solution_with_pi(problem: PadeProblem, Pi: Poly) -> PadeSolution:
    """Solution data encoded by an arbitrary coding polynomial (used for falsification)."""
    return solution_from_table(problem, partial_fractions(Pi, problem.A, problem.n), Pi)


# -- series coefficients -------------------------------------------------


def s_coefficient_closed(problem: PadeProblem, k: int) -> RatFunc:
    """Coefficient of z^-k in S(z;q) from the closed hypergeometric form."""
    if k < 1:
        raise ValueError("k must be >= 1")
    p = problem
    num = q_pochhammer_value(k - p.rho, p.rho) * q_pochhammer_value(k + p.n + 1, p.sigma)
    if not num:
        return num
    return RatFunc.q_power(k * (p.nu + 1)) * num / q_pochhammer_value(k, p.n + 1) ** p.A


def s_coefficient_via_table(solution: PadeSolution, k: int) -> RatFunc:
    """Coefficient of z^-k in S(z;q), i.e. q^k R(q^k), from the table."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return rsum(qpolylog_coeff(j, k + t) * p for j, t, p in solution.table.items() if p)


def evaluate_R(table: CoefficientTable, s: RatFunc) -> RatFunc:
    """R(s) = sum q^t p[j,t] / (1 - s q^t)^j at a point of Q(q)."""
    return rsum(
        RatFunc.q_power(t) * p / (1 - s * RatFunc.q_power(t)) ** j for j, t, p in table.items() if p
    )


def sbar_coefficient(solution: PadeSolution, k: int) -> RatFunc:
    """Coefficient of z^(n+k) in Sbar(z;q) as q^(-n-k) R(q^(-n-k))."""
    if k < 1:
        raise ValueError("k must be >= 1")
    e = -solution.problem.n - k
    return RatFunc.q_power(e) * evaluate_R(solution.table, RatFunc.q_power(e))


def sbar_coefficient_by_product(solution: PadeSolution, k: int) -> RatFunc:
    """Same coefficient, read off the product sum_j P_j(z) Li_j(z;1/q) plus P0bar."""
    m = solution.problem.n + k
    acc = rsum(
        qpolylog_recip_coeff(j, m - t) * p for j, t, p in solution.table.items() if p and m - t >= 1
    )
    return acc + solution.P0bar[m]


def s_series_head(solution: PadeSolution) -> list[RatFunc]:
    """Coefficients of z^0 .. z^(n-1) in S(z;q); all vanish by the choice of P0."""
    n = solution.problem.n
    out = []
    for d in range(n):
        k = -d
        acc = rsum(
            qpolylog_coeff(j, k + t) * solution.table[j, t]
            for j in range(1, solution.problem.A + 1)
            for t in range(max(0, 1 - k), n + 1)
        )
        out.append(acc + solution.P0[d])
    return out


# -- the function I at z = q^-l -------------------------------------------


def _falling(x: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= x - i
    return out


def residue_weight(j: int, t: int, ell: int) -> RatFunc:
    """q^t Res_{s=q^-t} s^l (1 - s q^t)^-j.

    Uses (1 - s q^t)^-j = (-1)^j q^(-tj) (s - q^-t)^-j and the closed
    (j-1)-th derivative of s^l.
    """
    deriv = _falling(ell, j - 1)
    if deriv == 0:
        return RatFunc()
    value = RatFunc.q_power(-t * (ell - j + 1))
    return (
        RatFunc.q_power(t)
        * ((-1) ** j * deriv)
        * RatFunc.q_power(-t * j)
        * value
        / factorial(j - 1)
    )


def i_residue_sum(solution: PadeSolution, ell: int) -> RatFunc:
    """I(q^-l; q) as the sum of residues at s = 1, q^-1, ..., q^-n."""
    return rsum(residue_weight(j, t, ell) * p for j, t, p in solution.table.items() if p)


def i_finite_formula(solution: PadeSolution, ell: int, shifted: bool = False) -> RatFunc:
    """I(q^-l; q) = -sum_j P_j(q^-l) (-l)_{j-1} / (j-1)!.

    With ``shifted=True`` the argument of P_j becomes q^(-l+1-j); that
    variant is not equal to the residue sum once n >= 1 and A >= 2, and is
    kept only so the difference can be exhibited.
    """
    total = RatFunc()
    for j in range(1, solution.problem.A + 1):
        weight = classical_pochhammer(-ell, j - 1)
        if weight == 0:
            continue
        z = RatFunc.q_power(-ell + (1 - j if shifted else 0))
        total = total + solution.P_j(j)(z) * weight / factorial(j - 1)
    return -total


@dataclass(frozen=True)
class LaurentExpansion:
    omega: int
    coefficients: tuple[RatFunc, ...]  # c_omega, c_omega+1, ...

    def c(self, k: int) -> RatFunc:
        if k < self.omega:
            return RatFunc()
        return self.coefficients[k - self.omega]


def laurent_at_infinity(solution: PadeSolution, count: int) -> LaurentExpansion:
    """Expansion of Pi(s)/(s;q)_{n+1}^A = sum_{k >= omega} c_k s^-k."""
    if count < 1:
        raise ValueError("count must be >= 1")
    Pi = solution.Pi
    den = denominator_poly(solution.problem.A, solution.problem.n)
    omega = den.degree - Pi.degree
    # in w = 1/s: Pi(s)/D(s) = w^omega * rev(Pi)(w) / rev(D)(w)
    order = count
    num = TruncatedSeries(list(reversed(Pi.coeffs)), 0, order, "1/s")
    dser = TruncatedSeries(list(reversed(den.coeffs)), 0, order, "1/s")
    ratio = num * dser.inverse()
    coeffs = tuple(ratio[i] if isinstance(ratio[i], RatFunc) else RatFunc(ratio[i]) for i in range(count))
    return LaurentExpansion(omega, coeffs)


def I_at(solution: PadeSolution, ell: int) -> RatFunc:
    return i_residue_sum(solution, ell)


def i_methods(solution: PadeSolution, ell: int, laurent: LaurentExpansion | None = None) -> dict[str, RatFunc]:
    """Values of I(q^-l) by every available route."""
    out = {"finite": i_finite_formula(solution, ell), "residue": i_residue_sum(solution, ell)}
    if ell >= 0:
        if laurent is None or ell + 1 - laurent.omega >= len(laurent.coefficients):
            laurent = laurent_at_infinity(solution, max(ell + 2 - solution.problem.omega, 1))
        out["laurent"] = laurent.c(ell + 1)
    return out


def i_disagreements(solution: PadeSolution, margin: int = 2) -> list[int]:
    """Exponents l in [-nu-margin, omega+margin] where the available I routes differ."""
    p = solution.problem
    laurent = laurent_at_infinity(solution, 2 * margin + 2)
    bad = []
    for ell in range(-p.nu - margin, p.omega + margin + 1):
        values = list(i_methods(solution, ell, laurent).values())
        if any(v != values[0] for v in values[1:]):
            bad.append(ell)
    return bad


# -- verification --------------------------------------------------------


@dataclass(frozen=True)
class Check:
    group: str  # "S", "Sbar", "I-" (l < 0), "I+" (l >= 0), "head", "norm"
    kind: str  # "vanish", "sharp" or "exact"
    index: int
    passed: bool


@dataclass
class VerificationReport:
    problem: PadeProblem
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def group_holds(self, group: str, kind: str = "vanish") -> bool:
        return all(c.passed for c in self.checks if c.group == group and c.kind == kind)

    def summary(self) -> dict[str, bool]:
        groups = sorted({(c.group, c.kind) for c in self.checks})
        return {f"{g}:{k}": self.group_holds(g, k) for g, k in groups}


def verify_solution(solution: PadeSolution) -> VerificationReport:
    """Check the three condition groups, their sharpness and the normalization, symbolically."""
    p = solution.problem
    report = VerificationReport(p)
    add = report.checks.append

    for d, c in enumerate(s_series_head(solution)):
        add(Check("head", "vanish", d, c.is_zero()))
    for k in range(1, p.rho + 1):
        add(Check("S", "vanish", k, s_coefficient_via_table(solution, k).is_zero()))
    add(Check("S", "sharp", p.rho + 1, not s_coefficient_via_table(solution, p.rho + 1).is_zero()))

    for k in range(1, p.sigma + 1):
        add(Check("Sbar", "vanish", k, sbar_coefficient(solution, k).is_zero()))
    add(Check("Sbar", "sharp", p.sigma + 1, not sbar_coefficient(solution, p.sigma + 1).is_zero()))

    for ell in p.window:
        add(Check("I-" if ell < 0 else "I+", "vanish", ell, i_residue_sum(solution, ell).is_zero()))
    below, above = p.window.start - 1, p.window.stop
    add(Check("I-", "sharp", below, not i_residue_sum(solution, below).is_zero()))
    add(Check("I+", "sharp", above, not i_residue_sum(solution, above).is_zero()))

    # the conditions are homogeneous, so only this pins the scalar to 1
    add(Check("norm", "exact", 0, reconstruct_pi(solution.table) == build_pi(p)))
    return report
