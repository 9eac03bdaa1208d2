from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from quadtrans.errors import NonTerminating, ParameterOutOfRange
from quadtrans.scalar import (
    GaussRat,
    QBase,
    hyp_terminating,
    parse_scalar,
    pochhammer,
    q_pochhammer,
    q_pochhammer_inf,
    qhyp_terminating,
    simplify,
    to_mp,
)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=12)
gauss = st.builds(GaussRat, rationals, rationals)


def test_q_pochhammer_value():
    assert q_pochhammer(F(2, 5), F(1, 3), 4) == F(74347, 151875)
    assert q_pochhammer(F(2, 5), F(1, 3), 0) == 1


def test_pochhammer_matches_rising_factorial():
    assert pochhammer(F(1, 2), 3) == F(1, 2) * F(3, 2) * F(5, 2)
    assert pochhammer(-3, 4) == 0


def test_hyp_terminating_value():
    assert hyp_terminating([-3, F(1, 2), F(1, 3)], [F(5, 2), F(7, 3)], 1) == F(44312, 47775)


def test_qhyp_terminating_value():
    # q^-3 = 8 at q = 1/2
    assert qhyp_terminating([8, F(1, 5)], [F(3, 7)], F(1, 2), F(1, 2)) == F(26, 34375)


def test_qhyp_against_mpmath():
    q = F(1, 2)
    upper, lower, z = [8, F(1, 5)], [F(3, 7)], F(1, 2)
    ref = mpmath.mpf(0)
    with mpmath.workprec(200):
        for k in range(4):
            t = mpmath.qp(8, 0.5, k) * mpmath.qp(mpmath.mpf(1) / 5, 0.5, k)
            t /= mpmath.qp(mpmath.mpf(3) / 7, 0.5, k) * mpmath.qp(0.5, 0.5, k)
            ref += t * mpmath.mpf(1) / 2**k
        assert abs(to_mp(qhyp_terminating(upper, lower, q, z)) - ref) < mpmath.mpf(10) ** -40


def test_non_terminating_raises():
    with pytest.raises(NonTerminating):
        hyp_terminating([F(1, 2)], [F(3, 2)], 1)


def test_q_pochhammer_inf_bound():
    with mpmath.workprec(256):
        val = q_pochhammer_inf(F(1, 3), F(1, 2), 200)
        val = val[0] if isinstance(val, tuple) else val
        assert abs(val - mpmath.qp(mpmath.mpf(1) / 3, mpmath.mpf(1) / 2)) < mpmath.mpf(10) ** -50


def test_parse_scalar():
    assert parse_scalar("3/4") == F(3, 4)
    z = parse_scalar("1/2-1/3*i")
    assert z == GaussRat(F(1, 2), F(-1, 3))
    assert parse_scalar("i") == GaussRat(0, 1)
    with pytest.raises(ValueError):
        parse_scalar("0.5")


def test_qbase_half_powers():
    b = QBase.from_half(F(1, 3))
    assert b.q == F(1, 9)
    assert b.power(F(3, 2)) == F(1, 27)
    with pytest.raises(ParameterOutOfRange):
        QBase(F(3, 2))
    with pytest.raises(ValueError):
        QBase(F(1, 4)).power(F(1, 2))


def test_simplify_collapses_real_gaussrat():
    assert simplify(GaussRat(F(2, 3), 0)) == F(2, 3)
    assert isinstance(simplify(GaussRat(F(2, 3), 0)), F)


@given(gauss, gauss, gauss)
def test_gaussrat_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if b != 0:
        assert (a / b) * b == a
    assert (a * a.conjugate()).im == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 5), rationals, rationals, st.sampled_from([F(1, 2), F(1, 3), F(2, 3)]))
def test_q_chu_vandermonde(n, a, c, q):
    # 2phi1(q^-n, a; c; q, q) = (c/a; q)_n a^n / (c; q)_n
    if c == 0 or a == 0 or q_pochhammer(c, q, n) == 0:
        return
    lhs = qhyp_terminating([q ** (-n), a], [c], q, q)
    rhs = q_pochhammer(c / a, q, n) * a**n / q_pochhammer(c, q, n)
    assert lhs == rhs
