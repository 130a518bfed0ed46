"""Command-line front end.

Exit status: 0 when every requested check passes, 1 when a mathematical
check is falsified, 2 on usage, constraint or capacity errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Sequence

from . import serialize
from .classical import ClassicalProblem, build_classical, verify_classical
from .confluence import TruncationError, confluence_report, numeric_confluence
from .core import (
    ConstraintError,
    PadeProblem,
    build_solution,
    i_disagreements,
    reconstruct_pi,
    valid_problems,
    verify_solution,
)
from .uniqueness import CapacityError, certify_uniqueness, check_capacity, max_dimension

log = logging.getLogger("qpade")

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE = 0, 1, 2

SUBCOMMANDS = ("construct", "verify", "unique", "classical", "confluence", "sweep")


@dataclass(frozen=True)
class RunConfig:
    command: str
    A: int = 2
    n: int = 0
    rho: int = 0
    sigma: int = 0
    nu: int = 0
    fmt: str = "json"
    z0: float = 2.0
    q_list: tuple[float, ...] = (0.9, 0.99, 0.999)
    terms: int = 400
    tolerance: float = 1e-12
    bound: int = 6
    jobs: int = 1

    def problem(self) -> PadeProblem:
        return PadeProblem(self.A, self.n, self.rho, self.sigma, self.nu)


# -- individual commands -------------------------------------------------


def _construct(cfg: RunConfig) -> tuple[bool, dict[str, Any]]:
    return True, serialize.solution_to_obj(build_solution(cfg.problem()))


def verify_instance(problem: PadeProblem) -> dict[str, Any]:
    solution = build_solution(problem)
    report = verify_solution(solution)
    bad_i = i_disagreements(solution)
    rebuilt = reconstruct_pi(solution.table) == solution.Pi
    return {
        "problem": serialize.problem_to_obj(problem),
        "groups": report.summary(),
        "failures": [f"{c.group}:{c.kind}:{c.index}" for c in report.failures()],
        "reconstruction": rebuilt,
        "i_methods_disagree_at": bad_i,
        "passed": report.passed and rebuilt and not bad_i,
    }


def _verify(cfg: RunConfig) -> tuple[bool, dict[str, Any]]:
    out = verify_instance(cfg.problem())
    return out["passed"], out


def unique_instance(problem: PadeProblem) -> dict[str, Any]:
    report = certify_uniqueness(problem)
    return {
        "problem": serialize.problem_to_obj(problem),
        "nullspace_dimension": report.dimension,
        "proportional_to_canonical": report.scalar is not None,
        "scalar": serialize.ratfunc_to_obj(report.scalar) if report.scalar is not None else None,
        "passed": report.certified,
    }


def _unique(cfg: RunConfig) -> tuple[bool, dict[str, Any]]:
    out = unique_instance(cfg.problem())
    return out["passed"], out


def _classical(cfg: RunConfig) -> tuple[bool, dict[str, Any]]:
    problem = ClassicalProblem(cfg.A, cfg.n, cfg.rho, cfg.sigma)
    solution = build_classical(problem)
    report = verify_classical(solution)
    iv = report.i_vanishing
    out = {
        "problem": {"A": cfg.A, "n": cfg.n, "rho": cfg.rho, "sigma": cfg.sigma},
        "P": {str(j): serialize.fraction_poly_to_list(solution.P_j(j), cfg.n + 1) for j in range(1, cfg.A + 1)},
        "P0": serialize.fraction_poly_to_list(solution.P0, max(cfg.n, 1)),
        "P0bar": serialize.fraction_poly_to_list(solution.P0bar, cfg.n + 1),
        "s_matches_closed": report.s_matches_closed,
        "s_vanish": report.s_vanish,
        "s_sharp": report.s_sharp,
        "sbar_vanish": report.sbar_vanish,
        "sbar_sharp": report.sbar_sharp,
        "reconstruction": report.reconstruction,
        "i_required_order": iv.required_order,
        "i_observed_order": iv.observed_order,
        "i_bound_holds": iv.bound_holds,
        "i_order_exactly_required": iv.exact_at_required,
        "passed": report.passed,
    }
    return report.passed, out


def confluence_instance(problem: PadeProblem) -> dict[str, Any]:
    r = confluence_report(problem)
    return {
        "problem": serialize.problem_to_obj(problem),
        "Q": {str(j): serialize.fraction_poly_to_list(q, problem.n + 1) for j, q in enumerate(r.limits.Q, 1)},
        "Q0bar": serialize.fraction_poly_to_list(r.limits.Q0bar, problem.n + 1),
        "pole_orders": {f"{j},{t}": o for (j, t), o in sorted(r.poles.orders.items())},
        "pole_bounds": {str(j): b for j, b in r.poles.bounds.items()},
        "strict_entries": [f"{j},{t}" for j, t in r.poles.strict_entries],
        "pole_bound_holds": r.poles.bound_holds,
        "Q_matches_classical": r.q_matches,
        "Q0_matches_classical": r.q0_matches,
        "Q0bar_matches_classical": r.q0bar_matches,
        "s_limit_matches": r.s_limit_matches,
        "derivative_formula": {
            "corrected_agrees": r.derivative.corrected_agrees,
            "literal_agrees": r.derivative.literal_agrees,
            "substituted_agrees": r.derivative.substituted_agrees,
            "literal_disagrees_at": [f"{j},{t}" for j, t in r.derivative.disagreements()],
        },
        "passed": r.passed,
    }


def _confluence(cfg: RunConfig) -> tuple[bool, dict[str, Any]]:
    problem = cfg.problem()
    out = confluence_instance(problem)
    samples = numeric_confluence(problem, cfg.z0, cfg.q_list, cfg.terms, cfg.tolerance)
    out["numeric"] = [
        {
            "q": s.q,
            "scaled_S": s.scaled_s,
            "S_tail_bound": s.s_tail_bound,
            "classical_S": s.classical_s,
            "S_error": s.s_error,
            "scaled_I": s.scaled_i,
            "minus_classical_I": s.minus_classical_i,
            "I_error": s.i_error,
            "scaled_log_q": s.scaled_log_q,
            "minus_log": s.minus_log,
        }
        for s in samples
    ]
    return out["passed"], out


def sweep_instance(problem: PadeProblem) -> dict[str, Any]:
    v = verify_instance(problem)
    u = unique_instance(problem)
    c = confluence_instance(problem)
    return {
        "problem": serialize.problem_to_obj(problem),
        "verify": v["passed"],
        "unique": u["passed"],
        "confluence": c["passed"],
    }


def _sweep(cfg: RunConfig) -> tuple[bool, dict[str, Any]]:
    if cfg.bound > max_dimension():
        raise CapacityError(f"sweep bound {cfg.bound} exceeds the capacity cap {max_dimension()} (set QPADE_MAX_DIM to raise it)")
    problems = list(valid_problems(cfg.bound))
    log.info("sweeping %d instances with %d job(s)", len(problems), cfg.jobs)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(sweep_instance, problems, chunksize=8))
    else:
        rows = [sweep_instance(p) for p in problems]
    counts = {k: {"passed": sum(r[k] for r in rows), "failed": sum(not r[k] for r in rows)}
              for k in ("verify", "unique", "confluence")}
    failed = [r["problem"] for r in rows if not (r["verify"] and r["unique"] and r["confluence"])]
    ok = not failed
    return ok, {"bound": cfg.bound, "instances": len(rows), "counts": counts, "failed": failed, "passed": ok}


COMMANDS = {
    "construct": _construct,
    "verify": _verify,
    "unique": _unique,
    "classical": _classical,
    "confluence": _confluence,
    "sweep": _sweep,
}


# -- output --------------------------------------------------------------


def _text(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict) and set(obj) == {"num", "den"}:
        return [pad + _ratfunc_text(obj)]
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if _is_leaf(v):
                lines.append(f"{pad}{k}: {_leaf_text(v)}")
            else:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
    elif isinstance(obj, list):
        for v in obj:
            if _is_leaf(v):
                lines.append(f"{pad}- {_leaf_text(v)}")
            else:
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
    else:
        lines.append(pad + str(obj))
    return lines


def _ratfunc_text(obj: dict) -> str:
    from .exact import RatFunc

    return str(RatFunc([int(c) for c in obj["num"]], [int(c) for c in obj["den"]]))


def _is_leaf(v: Any) -> bool:
    if isinstance(v, dict):
        return set(v) == {"num", "den"}
    if isinstance(v, list):
        return all(_is_leaf(x) and not isinstance(x, list) for x in v)
    return True


def _leaf_text(v: Any) -> str:
    if isinstance(v, dict):
        return _ratfunc_text(v)
    if isinstance(v, list):
        return "[" + ", ".join(_leaf_text(x) for x in v) + "]"
    return str(v)


def render(obj: Any, fmt: str) -> str:
    if fmt == "json":
        return serialize.dumps(obj)
    return "\n".join(_text(obj))


# -- entry points --------------------------------------------------------


@dataclass(frozen=True)
class RunResult:
    status: int
    output: str
    error: str = ""


def run(cfg: RunConfig) -> RunResult:
    """Execute one configuration and render its report."""
    try:
        if cfg.command != "sweep":
            if cfg.command == "classical":
                ClassicalProblem(cfg.A, cfg.n, cfg.rho, cfg.sigma)
            else:
                problem = cfg.problem()
                if cfg.command == "unique":
                    check_capacity(problem)
        ok, report = COMMANDS[cfg.command](cfg)
    except (ConstraintError, CapacityError, TruncationError) as exc:
        return RunResult(EXIT_USAGE, "", str(exc))
    return RunResult(EXIT_OK if ok else EXIT_FALSIFIED, render(report, cfg.fmt))


def _float_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of floats: {text!r}")
    if not values or any(not 0 < v < 1 for v in values):
        raise argparse.ArgumentTypeError("every q must lie in (0, 1)")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpade", description="Padé approximants to q-polylogarithms, built and checked exactly.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name)
        if name != "sweep":
            sp.add_argument("--A", type=int, required=True)
            sp.add_argument("--n", type=int, required=True)
            sp.add_argument("--rho", type=int, default=0)
            sp.add_argument("--sigma", type=int, default=0)
            sp.add_argument("--nu", type=int, default=0)
        sp.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")
        if name == "confluence":
            sp.add_argument("--z0", type=float, default=2.0)
            sp.add_argument("--q-list", type=_float_list, default=(0.9, 0.99, 0.999))
            sp.add_argument("--terms", type=int, default=400)
            sp.add_argument("--tolerance", type=float, default=1e-12)
        if name == "sweep":
            sp.add_argument("--bound", type=int, default=6, help="largest A(n+1) to include")
            sp.add_argument("--jobs", type=int, default=1)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    return RunConfig(**fields)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s: %(message)s")
    cfg = config_from_args(ns)
    if cfg.command == "confluence" and not cfg.z0 > 1:
        print("qpade: error: --z0 must be > 1", file=sys.stderr)
        return EXIT_USAGE
    result = run(cfg)
    if result.error:
        print(f"qpade: error: {result.error}", file=sys.stderr)
    if result.output:
        print(result.output)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
