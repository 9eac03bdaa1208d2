from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from quadtrans.errors import MixedParity
from quadtrans.poly import (
    DominancePoly2,
    Laurent2,
    Poly2,
    Polynomial1,
    SymLaurent1,
    dominates,
    downset,
    elementary_from_sympoly,
    even_odd_split,
    laurent_from_symmetric,
    orbit_sum,
    substitute_quadratic,
    symlaurent_square_substitute,
    symmetric_from_laurent,
    sympoly_from_elementary,
    total_key,
)

coeff = st.fractions(min_value=-5, max_value=5, max_denominator=7)
polys = st.lists(coeff, max_size=6).map(Polynomial1)


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@given(polys, polys, coeff)
def test_compose_evaluates(p, r, x):
    assert p.compose(r)(x) == p(r(x))


@given(polys, polys)
def test_long_division(a, b):
    if b.degree < 0:
        return
    quo, rem = a.divmod_linear_free(b)
    assert quo * b + rem == a
    assert rem.degree < b.degree


def test_even_odd_split():
    p = Polynomial1([1, 0, -3, 0, 2])
    assert even_odd_split(p) == ("even", Polynomial1([1, -3, 2]))
    kind, r = even_odd_split(Polynomial1([0, 2, 0, 5]))
    assert kind == "odd" and r == Polynomial1([2, 5])
    with pytest.raises(MixedParity):
        even_odd_split(Polynomial1([1, 1]))


def test_substitute_quadratic():
    p = Polynomial1([0, 1])
    assert substitute_quadratic(p, "2x^2-1") == Polynomial1([-1, 0, 2])
    assert substitute_quadratic(p * p) == Polynomial1([0, 0, 0, 0, 1])


@given(polys)
def test_symlaurent_round_trip(p):
    assert SymLaurent1.from_x_poly(p).to_x_poly() == p


@given(polys, coeff)
def test_symlaurent_value(p, z):
    if z == 0:
        return
    L = SymLaurent1.from_x_poly(p)
    x = (z + 1 / z) / 2
    total = L.coeff(0) + sum(L.coeff(k) * (z**k + z ** (-k)) for k in range(1, L.degree + 1))
    assert total == p(x)


def test_symlaurent_square_substitute():
    q = SymLaurent1([F(1, 3), 2, 1])
    kind, back = symlaurent_square_substitute(q.square_arg())
    assert kind == "even" and back == q
    zz = SymLaurent1([0, 1])
    kind, back = symlaurent_square_substitute(zz * q.square_arg())
    assert kind == "odd" and back == q
    with pytest.raises(MixedParity):
        symlaurent_square_substitute(SymLaurent1([1, 1]))


def test_dominance_order():
    assert dominates((1, 0), (0, 2)) is False
    assert dominates((1, 1), (2, 0))
    assert dominates((2, 0), (1, 1)) is False
    ds = downset((2, 1))
    assert ds[0] == (0, 0) and ds[-1] == (2, 1)
    assert all(dominates(i, (2, 1)) for i in ds)
    assert ds == sorted(ds, key=total_key)
    with pytest.raises(ValueError):
        downset((1, 2))


def test_poly2_compose_and_negate():
    X, Y = Poly2.x(), Poly2.y()
    p = X * X * Y + X
    assert p.compose(Y, X * X) == Y * Y * X * X + Y
    assert p.negate_x() == X * X * Y - X


def test_basis_conversions_round_trip():
    p = DominancePoly2({(2, 1): 1, (1, 1): F(2, 3), (1, 0): -4, (0, 0): F(1, 5)}, "monomial")
    assert elementary_from_sympoly(sympoly_from_elementary(p)).coeffs == p.coeffs
    s = DominancePoly2({(2, 1): 1, (2, 0): F(1, 3), (0, 0): 2}, "symmetric")
    assert symmetric_from_laurent(laurent_from_symmetric(s)).coeffs == s.coeffs


def test_orbit_sum_invariant():
    o = orbit_sum((2, 1))
    assert o.is_w2_invariant()
    assert len(o.terms) == 8
    assert Laurent2({(1, 0): 1}).is_w2_invariant() is False
