"""Uniqueness certificates: the homogeneous condition system and its nullspace over Q(q)."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .core import CoefficientTable, PadeProblem, build_solution, residue_weight
from .exact import PoleError, RatFunc, evaluate
from .qspecial import qpolylog_coeff, qpolylog_recip_coeff

DEFAULT_MAX_DIM = 12


class CapacityError(RuntimeError):
    """Instance larger than the configured A(n+1) cap."""


def max_dimension() -> int:
    return int(os.environ.get("QPADE_MAX_DIM", DEFAULT_MAX_DIM))


def check_capacity(problem: PadeProblem) -> None:
    cap = max_dimension()
    if problem.size > cap:
        raise CapacityError(f"A(n+1) = {problem.size} exceeds the capacity cap {cap} (set QPADE_MAX_DIM to raise it)")


@dataclass(frozen=True)
class ConditionSystem:
    problem: PadeProblem
    rows: tuple[tuple[RatFunc, ...], ...]
    labels: tuple[tuple[str, int], ...]  # ("S", k), ("Sbar", k) or ("I", l)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.problem.size

    def apply(self, vector: Sequence[RatFunc]) -> list[RatFunc]:
        out = []
        for row in self.rows:
            acc = RatFunc()
            for a, x in zip(row, vector):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return out


def _s_row(problem: PadeProblem, k: int) -> tuple[RatFunc, ...]:
    return tuple(qpolylog_coeff(j, k + t) for j, t in problem.columns())


def _sbar_row(problem: PadeProblem, k: int) -> tuple[RatFunc, ...]:
    m = problem.n + k
    return tuple(qpolylog_recip_coeff(j, m - t) for j, t in problem.columns())


def _i_row(problem: PadeProblem, ell: int) -> tuple[RatFunc, ...]:
    return tuple(residue_weight(j, t, ell) for j, t in problem.columns())


def assemble_system(problem: PadeProblem, extra_rows: int = 0) -> ConditionSystem:
    """Rows of the linear conditions on p[j,t], columns in (j, t) lexicographic order.

    ``extra_rows`` appends I-vanishing rows beyond the top of the window.
    """
    rows, labels = [], []
    for k in range(1, problem.rho + 1):
        rows.append(_s_row(problem, k))
        labels.append(("S", k))
    for k in range(1, problem.sigma + 1):
        rows.append(_sbar_row(problem, k))
        labels.append(("Sbar", k))
    top = problem.window.stop
    for ell in list(problem.window) + list(range(top, top + extra_rows)):
        rows.append(_i_row(problem, ell))
        labels.append(("I", ell))
    return ConditionSystem(problem, tuple(rows), tuple(labels))


def nullspace(system: ConditionSystem) -> list[list[RatFunc]]:
    check_capacity(system.problem)
    return linalg.nullspace(system.rows, system.problem.size)


@dataclass(frozen=True)
class ScalarComparison:
    scalar: RatFunc | None
    mismatch_index: int | None = None

    @property
    def proportional(self) -> bool:
        return self.scalar is not None


def compare_up_to_scalar(v: Sequence, w: Sequence) -> ScalarComparison:
    """Find lambda with v = lambda * w, or the first coordinate that rules it out."""
    if len(v) != len(w):
        raise ValueError("vectors of different length")
    if all(x == 0 for x in v) or all(x == 0 for x in w):
        raise ValueError("compare_up_to_scalar needs nonzero vectors")
    i0 = next(i for i, x in enumerate(w) if x != 0)
    lam = v[i0] / w[i0]
    for i, (a, b) in enumerate(zip(v, w)):
        if a != lam * b:
            return ScalarComparison(None, i)
    return ScalarComparison(lam if isinstance(lam, RatFunc) else RatFunc(lam))


@dataclass(frozen=True)
class UniquenessReport:
    problem: PadeProblem
    dimension: int
    basis: tuple[tuple[RatFunc, ...], ...]
    scalar: RatFunc | None  # basis[0] = scalar * canonical table, when dimension is 1

    @property
    def certified(self) -> bool:
        return self.dimension == 1 and self.scalar is not None


def certify_uniqueness(problem: PadeProblem, canonical: CoefficientTable | None = None) -> UniquenessReport:
    system = assemble_system(problem)
    basis = nullspace(system)
    if canonical is None:
        canonical = build_solution(problem).table
    scalar = None
    if len(basis) == 1:
        scalar = compare_up_to_scalar(basis[0], canonical.vector()).scalar
    return UniquenessReport(problem, len(basis), tuple(tuple(b) for b in basis), scalar)


# -- specialization ------------------------------------------------------


def specialize(system: ConditionSystem, q0: Fraction) -> list[list[Fraction]]:
    """Rows evaluated at q = q0; raises PoleError if q0 hits a denominator root."""
    return [[evaluate(a, q0) for a in row] for row in system.rows]


def rank_at(system: ConditionSystem, q0: Fraction) -> int:
    return linalg.rank(specialize(system, q0))


def predicted_rank(system: ConditionSystem, samples: int = 3, seed: int = 0) -> int:
    """Rank guess from random rational specializations (never a certificate)."""
    rng = random.Random(seed)
    best = 0
    tried = 0
    while tried < samples:
        q0 = Fraction(rng.randint(2, 97), rng.randint(2, 97))
        if q0 == 1:
            continue
        try:
            best = max(best, rank_at(system, q0))
        except PoleError:
            continue
        tried += 1
    return best
