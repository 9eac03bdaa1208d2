import random
from fractions import Fraction as F

import mpmath
import pytest

from quadtrans import quad1
from quadtrans.errors import NotEven, OrthogonalityFailure, PositivityViolated
from quadtrans.families1 import jacobi
from quadtrans.measures import (
    DiscreteFinite,
    JacobiBetaRatio,
    discrete_qracah_functional,
    jacobi_moment,
    monic_orthogonal_polynomials,
    orthogonality_check,
    pushforward_split,
    qintegral_display_check,
    qracah_symmetric_functional,
    random_even_measure,
    verify_split_master,
)
from quadtrans.poly import Polynomial1
from quadtrans.scalar import to_mp


def test_jacobi_moment_value_and_quadrature():
    a, b = F(1, 3), F(1, 4)
    assert jacobi_moment(3, a, b) == F(-281, 14663)
    with mpmath.workprec(128):
        w = lambda x: (1 - x) ** (mpmath.mpf(1) / 3) * (1 + x) ** (mpmath.mpf(1) / 4)
        ref = mpmath.quad(lambda x: x**3 * w(x), [-1, 0, 1]) / mpmath.quad(w, [-1, 0, 1])
        assert abs(to_mp(F(-281, 14663)) - ref) < mpmath.mpf(10) ** -25


def test_jacobi_orthogonality_exact():
    a, b = F(1, 3), F(1, 4)
    rep = orthogonality_check(lambda n: jacobi(n, a, b), JacobiBetaRatio(a, b), 6)
    assert rep["status"] == "pass"


def test_monic_ops_match_jacobi():
    a, b = F(2, 3), F(-1, 3)
    ops = monic_orthogonal_polynomials(JacobiBetaRatio(a, b), 5)
    for n, p in enumerate(ops):
        assert p == jacobi(n, a, b).monic()


def test_qintegral_display():
    rep = qintegral_display_check(Polynomial1([0, 1]), lambda x: 1, F(1, 2), K=120)
    assert rep["status"] == "pass"
    assert rep["bound"] <= F(1, 10**20)


@pytest.mark.parametrize("seed", range(20))
def test_split_master(seed):
    rng = random.Random(seed)
    mu = random_even_measure(rng)
    assert len(mu.nodes) <= 12
    verify_split_master(mu, 5)


def test_pushforward_needs_even_measure():
    with pytest.raises(NotEven):
        pushforward_split(DiscreteFinite([F(1), F(2)], [F(1), F(1)]))


def test_qracah_smallest_lattice():
    L = qracah_symmetric_functional(F(1, 2), F(1, 2), F(2, 3))
    # x runs over -1, 0, 1
    assert len(L.nodes) == 3
    assert L.nodes[0] == -L.nodes[2] and L.nodes[1] == 0
    assert L.weights[0] == L.weights[2]
    assert all(w > 0 for w in L.weights)


@pytest.mark.parametrize("N", [F(3, 2), F(2), F(5, 2)])
def test_qracah56_lhs_orthogonal(N):
    q, alpha = F(2, 3), F(1, 2)
    rec = quad1.lookup("qRacah-even")
    L = discrete_qracah_functional(N, q, alpha, variant="56", claim_positive=True)
    orthogonality_check(rec.lhs.spec({"q": q, "alpha": alpha, "N": N}), L, int(2 * N + 1))


@pytest.mark.parametrize("N", [F(3, 2), F(5, 2)])
def test_same_weights_on_squares_fails_at_half_integer_N(N):
    q, alpha = F(2, 3), F(1, 2)
    rec = quad1.lookup("qRacah-even")
    L = discrete_qracah_functional(N, q, alpha, space="Y")
    with pytest.raises(OrthogonalityFailure):
        orthogonality_check(rec.rhs.spec({"q": q, "alpha": alpha, "N": N}), L, len(L.nodes) - 1)


def test_same_weights_on_squares_holds_at_integer_N():
    q, alpha, N = F(2, 3), F(1, 2), F(2)
    rec = quad1.lookup("qRacah-even")
    L = discrete_qracah_functional(N, q, alpha, space="Y")
    orthogonality_check(rec.rhs.spec({"q": q, "alpha": alpha, "N": N}), L, len(L.nodes) - 1)


def test_qracah47_positivity_window():
    q, N = F(1, 2), 3
    inside = discrete_qracah_functional(N, q, gamma=F(12), variant="47", claim_positive=True)
    assert inside.positive
    with pytest.raises(PositivityViolated):
        discrete_qracah_functional(N, q, gamma=F(100), variant="47", claim_positive=True)
