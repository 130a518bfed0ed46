"""JSON encoding of solutions and reports.

A rational function in q is {"num": [...], "den": [...]}, integer strings
ascending in q, in the canonical reduced form (zero is num = []).  A
polynomial in z or s is a list of such objects, ascending in degree.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .core import CoefficientTable, PadeProblem, PadeSolution
from .exact import Poly, RatFunc


def ratfunc_to_obj(f: RatFunc | int | Fraction) -> dict[str, list[str]]:
    f = f if isinstance(f, RatFunc) else RatFunc(f)
    return {"num": [str(c) for c in f.numerator_coeffs], "den": [str(c) for c in f.denominator_coeffs]}


def ratfunc_from_obj(obj: dict[str, list[str]]) -> RatFunc:
    num = [int(c) for c in obj["num"]]
    den = [int(c) for c in obj["den"]]
    if not den:
        raise ValueError("empty denominator")
    f = RatFunc(num, den)
    if (f.numerator_coeffs, f.denominator_coeffs) != (tuple(num), tuple(den)):
        raise ValueError("rational function is not in canonical reduced form")
    return f


def poly_to_list(p: Poly, length: int | None = None) -> list[dict[str, list[str]]]:
    coeffs = p.padded(length) if length is not None else list(p.coeffs)
    return [ratfunc_to_obj(c) for c in coeffs]


def poly_from_list(items: list, var: str) -> Poly:
    return Poly([ratfunc_from_obj(c) for c in items], var)


def fraction_poly_to_list(p: Poly, length: int | None = None) -> list[str]:
    coeffs = p.padded(length) if length is not None else list(p.coeffs)
    return [str(Fraction(c)) for c in coeffs]


def problem_to_obj(p: PadeProblem) -> dict[str, int]:
    return {"A": p.A, "n": p.n, "rho": p.rho, "sigma": p.sigma, "nu": p.nu}


def solution_to_obj(solution: PadeSolution) -> dict[str, Any]:
    p = solution.problem
    n1 = p.n + 1
    return {
        "problem": problem_to_obj(p),
        "Pi": poly_to_list(solution.Pi),
        "P": {str(j): poly_to_list(solution.P_j(j), n1) for j in range(1, p.A + 1)},
        "P0": poly_to_list(solution.P0, max(p.n, 1)),
        "P0bar": poly_to_list(solution.P0bar, n1),
    }


def solution_from_obj(obj: dict[str, Any]) -> PadeSolution:
    problem = PadeProblem(**obj["problem"])
    P = tuple(poly_from_list(obj["P"][str(j)], "z") for j in range(1, problem.A + 1))
    table = CoefficientTable.from_vector(problem.A, problem.n, [P[j - 1][t] for j, t in problem.columns()])
    return PadeSolution(
        problem=problem,
        Pi=poly_from_list(obj["Pi"], "s"),
        table=table,
        P=P,
        P0=poly_from_list(obj["P0"], "z"),
        P0bar=poly_from_list(obj["P0bar"], "z"),
    )


def dumps(obj: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2)


def to_json(solution: PadeSolution) -> str:
    return dumps(solution_to_obj(solution))


def from_json(text: str) -> PadeSolution:
    return solution_from_obj(json.loads(text))
