import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qpade.exact import Poly, RatFunc
from qpade.qspecial import (
    PochhammerSpec,
    classical_pochhammer,
    q_pochhammer_poly,
    q_pochhammer_value,
    q_zeta_partial,
    qpolylog_coeff,
    qpolylog_recip_coeff,
)

q = RatFunc.q()


def test_empty_q_pochhammer():
    assert q_pochhammer_poly(PochhammerSpec(3, 0)) == Poly([RatFunc(1)])


def test_single_factor():
    assert q_pochhammer_poly(PochhammerSpec(-1, 1)) == Poly([RatFunc(1), -1 / q])


def test_negative_length_rejected():
    with pytest.raises(ValueError):
        PochhammerSpec(0, -1)


@given(st.integers(-4, 4), st.integers(0, 4))
def test_roots_of_q_pochhammer(e, m):
    p = q_pochhammer_poly(PochhammerSpec(e, m))
    assert p.degree == m and p[0] == 1
    for i in range(m):
        assert p(RatFunc.q_power(-e - i)) == 0


@pytest.mark.parametrize("rho", [1, 2, 3])
def test_rho_factor_vanishes_at_q_powers(rho):
    p = q_pochhammer_poly(PochhammerSpec(-rho, rho))
    for k in range(1, rho + 1):
        assert p(RatFunc.q_power(k)) == 0
    assert p(RatFunc.q_power(rho + 1)) != 0


def test_q_pochhammer_value_matches_poly():
    spec = PochhammerSpec(2, 3)
    assert q_pochhammer_poly(spec)(RatFunc(1)) == q_pochhammer_value(2, 3)


def test_qpolylog_coeff_examples():
    assert qpolylog_coeff(1, 1) == q / (1 - q)
    assert qpolylog_coeff(2, 2) == q**2 / (1 - q**2) ** 2
    with pytest.raises(ValueError):
        qpolylog_coeff(3, 0)
    with pytest.raises(ValueError):
        qpolylog_coeff(0, 1)


def test_qpolylog_recip_coeff_values():
    # q^-k / (1 - q^-k)^j; odd j carries a minus sign after normalization
    assert qpolylog_recip_coeff(1, 1) == -1 / (1 - q)
    assert qpolylog_recip_coeff(2, 1) == q / (1 - q) ** 2
    assert qpolylog_recip_coeff(1, 2) == -1 / (1 - q**2)
    with pytest.raises(ValueError):
        qpolylog_recip_coeff(1, 0)


@given(st.integers(1, 4), st.integers(1, 5))
def test_qpolylog_recip_identity(j, k):
    assert qpolylog_recip_coeff(j, k) * RatFunc.one_minus_q_power(-k) ** j == RatFunc.q_power(-k)


def test_classical_pochhammer_examples():
    assert classical_pochhammer(7, 0) == 1
    assert classical_pochhammer(3, 2) == 12
    assert classical_pochhammer(-2, 3) == 0
    s = Poly([0, 1])
    assert classical_pochhammer(s, 2) == Poly([0, 1, 1])


@given(st.integers(0, 5))
def test_classical_pochhammer_vanishing(rho):
    for k in range(1, rho + 1):
        assert classical_pochhammer(k - rho, rho) == 0
    assert classical_pochhammer(1, rho) == math.factorial(rho)


def test_q_zeta_s1_half():
    value, tail = q_zeta_partial(1, 0.5, 60)
    exact = sum(Fraction(1, 2**k) / (1 - Fraction(1, 2**k)) for k in range(1, 200))
    assert abs(value - float(exact)) <= tail + 1e-15


def test_q_zeta_zero_terms():
    value, tail = q_zeta_partial(1, 0.5, 0)
    full, _ = q_zeta_partial(1, 0.5, 200)
    assert value == 0 and tail >= full


@pytest.mark.parametrize("s", [1, 2, 3])
def test_q_zeta_tail_is_honest(s):
    prev_value, prev_tail = q_zeta_partial(s, 0.9, 20)
    for terms in (40, 80, 400):
        value, tail = q_zeta_partial(s, 0.9, terms)
        assert prev_value - 1e-12 <= value <= prev_value + prev_tail + 1e-12
        prev_value, prev_tail = value, tail


def test_q_zeta_confluence_s2():
    q0 = 0.999
    value, tail = q_zeta_partial(2, q0, 60000)
    assert tail < 1e-6
    assert abs((1 - q0) ** 2 * value / (math.pi**2 / 6) - 1) < 0.02


def test_q_zeta_domain():
    with pytest.raises(ValueError):
        q_zeta_partial(2, 1.0, 10)
    with pytest.raises(ValueError):
        q_zeta_partial(2, 0.0, 10)
