import random
from fractions import Fraction as F

import mpmath
import pytest

from quadtrans.errors import HypothesisViolated, IdentityFailure, ParameterOutOfRange
from quadtrans.poly import DominancePoly2, Poly2
from quadtrans.scalar import to_mp
from quadtrans.twovar import (
    BC2Exact,
    BC2Quadrature,
    DiscreteFinite2,
    KoornwinderTorus,
    REGION_MAPS,
    TorusFromLambda,
    bc2_jacobi,
    dominance_gram_schmidt,
    full_orthogonality,
    koornwinder2,
    random_even_functional,
    random_lambda_functional,
    verify_bc2_quadratic,
    verify_laurent_prop,
    verify_prop17,
    verify_prop20,
    verify_prop25,
)


@pytest.mark.parametrize("seed", range(10))
def test_prop17_random_even_functionals(seed):
    L = random_even_functional(random.Random(seed))
    rep = verify_prop17(L, upto=(2, 2))
    assert rep["status"] == "pass"


def test_prop17_needs_even_functional():
    L = DiscreteFinite2([(F(1), F(2)), (F(3), F(1)), (F(-1), F(5))], [1, 2, 3])
    with pytest.raises(HypothesisViolated):
        verify_prop17(L)


@pytest.mark.parametrize("seed", range(3))
def test_prop20_random(seed):
    L = random_even_functional(random.Random(100 + seed))
    assert verify_prop20(L, upto=(2, 2))["status"] == "pass"


@pytest.mark.parametrize("seed", range(2))
def test_prop25_random(seed):
    L = random_lambda_functional(random.Random(seed))
    assert verify_prop25(L, upto=(2, 1))["status"] == "pass"


@pytest.mark.parametrize("seed", range(2))
def test_laurent_form_random(seed):
    L = TorusFromLambda(random_lambda_functional(random.Random(seed)))
    assert verify_laurent_prop(L, upto=(2, 1))["status"] == "pass"


def test_laurent_printed_denominator_fails():
    L = TorusFromLambda(random_lambda_functional(random.Random(0)))
    with pytest.raises(IdentityFailure):
        verify_laurent_prop(L, upto=(2, 1), printed_denominator=True)


@pytest.mark.parametrize("alpha,gamma", [(F(1, 2), F(1, 2)), (F(1, 2), F(3, 2)), (F(3, 2), F(1, 2))])
def test_bc2_quadratic_exact(alpha, gamma):
    rep = verify_bc2_quadratic(alpha, gamma, upto=5)
    assert rep["status"] == "pass"


def test_bc2_exact_engine_domain():
    with pytest.raises(ParameterOutOfRange):
        BC2Exact(F(1, 3), F(1, 4), F(1, 4))
    with pytest.raises(ParameterOutOfRange):
        BC2Exact(F(-2), F(1, 4), F(1, 2))


def test_bc2_quadrature_matches_exact_moments():
    with mpmath.workprec(128):
        E = BC2Exact(F(1, 3), F(1, 4), F(1, 2))
        Q = BC2Quadrature(F(1, 3), F(1, 4), F(1, 2), precision=128, degree=4, target=mpmath.mpf("1e-25"))
        worst = max(abs(Q.moment(i, j) - mpmath.mpf(E.moment(i, j).numerator) / E.moment(i, j).denominator)
                    for i in range(5) for j in range(5 - i))
    assert worst < mpmath.mpf("1e-20")


def test_bc2_routes_agree():
    a, b, g = F(1, 2), F(1, 3), F(1, 2)
    omega = bc2_jacobi(a, b, g, upto=(2, 1), route="omega")
    lam = bc2_jacobi(a, b, g, upto=(2, 1), route="lambda")
    assert set(omega) == set(lam)
    for idx in omega:
        assert omega[idx].to_poly2() == lam[idx].to_poly2()


def test_gram_schmidt_independent_of_linear_extension():
    L = BC2Exact(F(1, 2), F(1, 3), F(1, 2))
    a = dominance_gram_schmidt(L, "monomial", upto=(3, 1))
    b = dominance_gram_schmidt(L, "monomial", upto=(3, 1), key=lambda idx: (idx[0], idx[1]))
    assert set(a) == set(b)
    for idx in a:
        assert a[idx].to_poly2() == b[idx].to_poly2()


def test_dominance_orthogonality_and_monic():
    L = BC2Exact(F(1, 2), F(1, 3), F(1, 2))
    table = dominance_gram_schmidt(L, "monomial", upto=(2, 2))
    for (n, k), p in table.items():
        assert p.leading == (n, k) and p.is_monic()
        for m in range(n + 1):
            for l in range(m + 1):
                if (m, l) != (n, k) and m + l <= n + k:
                    below = DominancePoly2({(m, l): 1}, "monomial").to_poly2()
                    assert L.apply(p.to_poly2() * below) == 0


def test_parity_hypotheses():
    assert BC2Exact(F(1, 2), F(1, 2), F(1, 2)).even_in_x()
    assert not BC2Exact(F(1, 2), F(1, 3), F(1, 2)).even_in_x()
    assert random_lambda_functional(random.Random(3)).reflection_invariant()


@pytest.mark.parametrize("name", sorted(REGION_MAPS))
def test_region_maps(name):
    assert REGION_MAPS[name].spot_check(count=30, seed=1)["status"] == "pass"


def test_full_orthogonality_can_fail_for_unrelated_indices():
    # (3, 0) and (2, 2) are not comparable in the dominance order
    rng = random.Random(3)
    pts = [(F(rng.randint(-9, 9), rng.randint(1, 5)), F(rng.randint(-9, 9), rng.randint(1, 5))) for _ in range(20)]
    L = DiscreteFinite2(pts, [F(rng.randint(1, 9)) for _ in pts])
    table = dominance_gram_schmidt(L, "monomial", indices=[(2, 2), (3, 0)])
    assert full_orthogonality(L, table) != 0
    related = dominance_gram_schmidt(L, "monomial", upto=(2, 0))
    assert full_orthogonality(L, related) == 0


def _torus_ct_oracle(q, params, ks, points=160):
    """1D constant terms of (z^2, z^-2; q)_inf / prod (a z, a/z; q)_inf by a periodic rule."""
    qm = mpmath.mpf(q.numerator) / q.denominator
    pm = [mpmath.mpf(p.numerator) / p.denominator for p in params]

    def f(z):
        v = mpmath.qp(z * z, qm) * mpmath.qp(1 / (z * z), qm)
        for a in pm:
            v /= mpmath.qp(a * z, qm) * mpmath.qp(a / z, qm)
        return v

    zs = [mpmath.expjpi(mpmath.mpf(2 * j + 1) / points) for j in range(points)]
    vals = [f(z) for z in zs]
    return {k: mpmath.re(mpmath.fsum(z**k * v for z, v in zip(zs, vals))) / points for k in ks}


def test_koornwinder_moments_at_t_equal_q():
    # at t = q the cross factor is (1 - w)(1 - 1/w) with w = z1 z2 and z1/z2
    q = F(1, 4)
    params = (F(1, 2), F(-1, 3), F(1, 5), F(2, 7))
    with mpmath.workprec(128):
        L = KoornwinderTorus(q, q, *params, precision=128, M=64)
        c = _torus_ct_oracle(q, params, range(7))
        lw = {-1: -1, 0: 2, 1: -1}

        def mom(a, b):
            return sum(cs * cr * c[abs(a + s + r)] * c[abs(b + s - r)] for s, cs in lw.items() for r, cr in lw.items())

        m0 = mom(0, 0)
        worst = max(abs(mom(a, b) / m0 - L.moment(a, b)) for a in range(-2, 3) for b in range(-2, 3))
    assert worst < mpmath.mpf("1e-24")


@pytest.fixture(scope="module")
def small_koornwinder():
    p, t, a = F(1, 2), F(1, 3), F(2, 5)
    q = p * p
    with mpmath.workprec(128):
        P, L = koornwinder2(q, t, a, -a, p, -p, upto=(2, 0), precision=128, M=64)
        good, _ = koornwinder2(q * q, a * a, t, q * t, -1, -q, indices=[(1, 0)], precision=128, M=64)
        bad, _ = koornwinder2(q * q, a * a, t, q * t, -q, -q * q, indices=[(1, 0)], precision=128, M=64)
    return P, L, good, bad


def _laurent_diff(u, v):
    keys = set(u.terms) | set(v.terms)
    return max(abs(to_mp(u.terms.get(k, 0)) - to_mp(v.terms.get(k, 0))) for k in keys)


def test_koornwinder_even_transformation_small(small_koornwinder):
    P, _, good, _ = small_koornwinder
    lhs = P[(1, 1)].to_laurent()
    assert _laurent_diff(lhs, good[(1, 0)].to_laurent().substitute_product_ratio()) < mpmath.mpf("1e-15")


def test_koornwinder_wrong_parameters_fail(small_koornwinder):
    P, _, _, bad = small_koornwinder
    lhs = P[(1, 1)].to_laurent()
    assert _laurent_diff(lhs, bad[(1, 0)].to_laurent().substitute_product_ratio()) > mpmath.mpf("1e-3")


def test_koornwinder_fully_orthogonal(small_koornwinder):
    P, L, _, _ = small_koornwinder
    with mpmath.workprec(128):
        assert full_orthogonality(L, P) < mpmath.mpf("1e-15")
