import pytest

from qpade.core import (
    FACTOR_GROUP,
    ConstraintError,
    PadeProblem,
    build_pi,
    build_solution,
    i_disagreements,
    i_finite_formula,
    i_methods,
    i_residue_sum,
    laurent_at_infinity,
    partial_fractions,
    pi_without,
    reconstruct_pi,
    s_coefficient_closed,
    s_coefficient_via_table,
    sbar_coefficient,
    sbar_coefficient_by_product,
    solution_from_table,
    solution_with_pi,
    valid_problems,
    verify_solution,
)
from qpade.exact import Poly, RatFunc

q = RatFunc.q()
ONE = RatFunc(1)

SAMPLE = [
    PadeProblem(2, 0),
    PadeProblem(1, 2, 1, 0, 0),
    PadeProblem(2, 1, 1, 1, 0),
    PadeProblem(3, 1, 0, 0, 1),
    PadeProblem(2, 2, 1, 1, 2),
    PadeProblem(4, 1, 2, 1, 1),
]


def test_constraint_message():
    with pytest.raises(ConstraintError, match=r"rho \+ sigma \+ nu \+ 2 <= A\(n\+1\)"):
        PadeProblem(1, 0)
    with pytest.raises(ConstraintError):
        PadeProblem(2, 0, nu=-1)


def test_window_and_omega():
    p = PadeProblem(3, 1, 1, 0, 2)
    assert list(p.window) == [-2, -1, 0, 1]
    assert len(p.window) == p.size - p.rho - p.sigma - 1
    assert p.omega == 3


def test_valid_problem_count():
    probs = list(valid_problems(8))
    assert len(probs) == len(set(probs)) == 668
    assert all(p.size <= 8 for p in probs)


# -- coding polynomial ---------------------------------------------------


def test_build_pi_examples():
    assert build_pi(PadeProblem(2, 0)) == Poly([ONE])
    assert build_pi(PadeProblem(3, 0, rho=1)) == Poly([ONE, -1 / q])
    expected = Poly([0, 0, ONE]) * Poly([ONE, -1 / q]) * Poly([ONE, -(q**2)])
    assert build_pi(PadeProblem(3, 1, 1, 1, 2)) == expected


@pytest.mark.parametrize("p", SAMPLE)
def test_build_pi_roots(p):
    Pi = build_pi(p)
    assert Pi.degree == p.rho + p.sigma + p.nu
    for k in range(1, p.rho + 1):
        assert Pi(RatFunc.q_power(k)) == 0
    for k in range(1, p.sigma + 1):
        assert Pi(RatFunc.q_power(-p.n - k)) == 0
    assert all(Pi[i] == 0 for i in range(p.nu))


# -- partial fractions ---------------------------------------------------


def test_partial_fractions_elementary():
    table = partial_fractions(Poly([ONE]), 2, 0)
    assert table[2, 0] == 1 and table[1, 0] == 0


def test_partial_fractions_two_poles():
    table = partial_fractions(Poly([ONE]), 1, 1)
    assert table[1, 0] == 1 / (1 - q)
    assert table[1, 1] == -1 / (1 - q)


def test_partial_fractions_degree_too_large():
    with pytest.raises(ValueError):
        partial_fractions(Poly([ONE, ONE, ONE]), 2, 0)


@pytest.mark.parametrize("p", SAMPLE)
def test_reconstruction(p):
    sol = build_solution(p)
    assert reconstruct_pi(sol.table) == sol.Pi


# -- the A=2, n=0 instance -----------------------------------------------


def test_li2_instance():
    sol = build_solution(PadeProblem(2, 0))
    assert sol.P_j(1).is_zero() and sol.P_j(2) == Poly([ONE], "z")
    assert sol.P0.is_zero() and sol.P0bar.is_zero()
    assert s_coefficient_closed(sol.problem, 1) == q / (1 - q) ** 2
    assert s_coefficient_via_table(sol, 3) == q**3 / (1 - q**3) ** 2
    assert i_residue_sum(sol, 0) == 0
    lau = laurent_at_infinity(sol, 3)
    assert lau.omega == 2 and lau.c(2) == 1


@pytest.mark.parametrize("p", SAMPLE)
def test_degrees_and_p0bar_constant(p):
    sol = build_solution(p)
    assert all(P.degree <= p.n for P in sol.P)
    assert sol.P0.degree <= p.n - 1
    assert sol.P0bar[0] == 0


def test_n0_has_empty_p0():
    for p in valid_problems(5):
        if p.n == 0:
            assert build_solution(p).P0.is_zero()


# -- S and Sbar coefficients ---------------------------------------------


@pytest.mark.parametrize("p", SAMPLE)
def test_s_coefficients(p):
    sol = build_solution(p)
    for k in range(1, 11):
        assert s_coefficient_via_table(sol, k) == s_coefficient_closed(p, k)
    for k in range(1, p.rho + 1):
        assert s_coefficient_closed(p, k) == 0
    assert s_coefficient_closed(p, p.rho + 1) != 0


@pytest.mark.parametrize("p", SAMPLE)
def test_sbar_two_routes(p):
    sol = build_solution(p)
    for k in range(1, p.sigma + 4):
        assert sbar_coefficient(sol, k) == sbar_coefficient_by_product(sol, k)
    for k in range(1, p.sigma + 1):
        assert sbar_coefficient(sol, k) == 0
    assert sbar_coefficient(sol, p.sigma + 1) != 0


# -- I at q-powers -------------------------------------------------------


@pytest.mark.parametrize("p", SAMPLE)
def test_three_routes_agree(p):
    assert i_disagreements(build_solution(p)) == []


def test_i_sharp_example():
    sol = build_solution(PadeProblem(3, 1, 0, 0, 1))
    assert i_methods(sol, 4)["residue"] == 1 / q**3
    assert len(set(i_methods(sol, 4).values())) == 1


def test_i_below_window_nonzero():
    for p in SAMPLE:
        if p.nu > 0:
            assert i_residue_sum(build_solution(p), -p.nu - 1) != 0


def test_shifted_finite_formula_differs():
    # the argument shift q^(1-j) inside P_j disagrees with the residue sum
    sol = build_solution(PadeProblem(2, 1))
    assert i_finite_formula(sol, 1, shifted=True) != 0
    assert i_finite_formula(sol, 1) == i_residue_sum(sol, 1) == 0


# -- verification and falsification --------------------------------------


@pytest.mark.parametrize("p", SAMPLE)
def test_verify_passes(p):
    report = verify_solution(build_solution(p))
    assert report.passed, report.failures()


@pytest.mark.parametrize("p", SAMPLE)
def test_perturbation_fails(p):
    sol = build_solution(p)
    bad = solution_from_table(p, sol.table.perturbed(1, 0), sol.Pi)
    assert not verify_solution(bad).passed


@pytest.mark.parametrize("factor", ["rho", "sigma", "nu"])
def test_dropping_a_factor_breaks_its_group(factor):
    cases = [p for p in valid_problems(6) if getattr(p, factor) > 0]
    assert len(cases) >= 3
    for p in cases:
        report = verify_solution(solution_with_pi(p, pi_without(p, factor)))
        broken = {g for g in ("S", "Sbar", "I-", "I+", "head") if not report.group_holds(g)}
        assert broken == {FACTOR_GROUP[factor]}, (p, broken)


def test_pi_equal_one_breaks_s_group():
    p = PadeProblem(2, 1, 1, 0, 0)
    report = verify_solution(solution_with_pi(p, Poly([ONE])))
    assert not report.group_holds("S")


@pytest.mark.parametrize("p", SAMPLE)
def test_raising_degree_breaks_window_top(p):
    Pi = build_pi(p) * Poly([ONE, q + 3])
    sol = solution_with_pi(p, Pi)
    assert i_residue_sum(sol, p.window.stop - 1) != 0
