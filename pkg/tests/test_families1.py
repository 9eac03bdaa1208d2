from fractions import Fraction as F

import mpmath
import pytest

from quadtrans.errors import ParameterConstraintViolated
from quadtrans.families1 import (
    ALIASES,
    FAMILIES,
    FamilySpec,
    askey_wilson,
    evaluate,
    hermite,
    jacobi,
    laguerre,
    make_polynomial,
    q_racah,
    three_term_recurrence_check,
    wilson,
)
from quadtrans.scalar import to_mp

TOL = mpmath.mpf(10) ** -40


def close(exact, ref):
    with mpmath.workprec(256):
        return abs(to_mp(exact) - ref) < TOL * (1 + abs(ref))


def test_jacobi_value():
    v = jacobi(3, F(1, 3), F(1, 4))(F(1, 2))
    assert v == F(-12305, 24576)
    with mpmath.workprec(256):
        assert close(v, mpmath.jacobi(3, mpmath.mpf(1) / 3, mpmath.mpf(1) / 4, mpmath.mpf(1) / 2))


def test_laguerre_value():
    v = laguerre(4, F(1, 3))(F(2, 5))
    assert v == F(24017, 151875)
    with mpmath.workprec(256):
        assert close(v, mpmath.laguerre(4, mpmath.mpf(1) / 3, mpmath.mpf(2) / 5))


def test_hermite_value():
    v = hermite(5)(F(1, 3))
    assert v == F(8312, 243)
    with mpmath.workprec(256):
        assert close(v, mpmath.hermite(5, mpmath.mpf(1) / 3))


def test_askey_wilson_ratio_value():
    v = askey_wilson(3, F(1, 2), F(1, 3), F(-1, 4), F(2, 5), F(1, 3), "ratio")(F(1, 5))
    assert v == F(71465169829, 1085254500000)
    with mpmath.workprec(256):
        a, b, c, d, q = (mpmath.mpf(1) / 2, mpmath.mpf(1) / 3, -mpmath.mpf(1) / 4, mpmath.mpf(2) / 5, mpmath.mpf(1) / 3)
        z = mpmath.mpf(1) / 5 + 1j * mpmath.sqrt(1 - mpmath.mpf(1) / 25)
        ref = 0
        upper = [q**-3, q**2 * a * b * c * d, a * z, a / z]
        lower = [a * b, a * c, a * d, q]
        for k in range(4):
            t = mpmath.mpf(1)
            for u in upper:
                t *= mpmath.qp(u, q, k)
            for l in lower:
                t /= mpmath.qp(l, q, k)
            ref += t * q**k
        assert close(v, mpmath.re(ref))


def test_wilson_value():
    a, b, c, d = F(1, 2), F(1, 3), F(1, 4), F(1, 5)
    v = wilson(2, a, b, c, d)(F(2, 3))
    assert v == F(-13013, 32400)
    with mpmath.workprec(256):
        A, B, C, D = (to_mp(t) for t in (a, b, c, d))
        x = mpmath.sqrt(mpmath.mpf(2) / 3)
        pre = mpmath.rf(A + B, 2) * mpmath.rf(A + C, 2) * mpmath.rf(A + D, 2)
        ref = pre * mpmath.hyper([-2, 1 + A + B + C + D, A + 1j * x, A - 1j * x], [A + B, A + C, A + D], 1)
        assert close(v, mpmath.re(ref))


def test_monic_normalization():
    p = make_polynomial(FamilySpec("jacobi", {"alpha": F(1, 3), "beta": F(1, 4)}, normalization="monic"), 4)
    assert p.leading == 1 and p.degree == 4


def test_aliases_resolve():
    for name, (base, fixed) in ALIASES.items():
        params = {k: F(1, 5) for k in FAMILIES[base].params}
        if base == "q_racah":
            params["gamma"] = F(3) ** 4
        spec = FamilySpec(name, params, q=F(1, 3) if FAMILIES[base].q_family else None)
        assert spec.family_id == base
        assert all(spec.params[k] == v for k, v in fixed.items())


def test_missing_parameter():
    with pytest.raises(ParameterConstraintViolated):
        FamilySpec("jacobi", {"alpha": 1})
    with pytest.raises(KeyError):
        FamilySpec("nope", {})


def test_q_racah_lattice_evaluation():
    q = F(1, 2)
    spec = FamilySpec("q_racah", {"alpha": F(1, 3), "beta": F(1, 5), "gamma": q**-4, "delta": F(1, 7)}, q=q)
    v = evaluate(spec, 2, 1, lattice=True)
    assert v == make_polynomial(spec, 2)(q**-1 + q**-4 * F(1, 7) * q**2)


RECURRENCE_CASES = [
    FamilySpec("jacobi", {"alpha": F(1, 3), "beta": F(-1, 4)}),
    FamilySpec("laguerre", {"alpha": F(2, 3)}),
    FamilySpec("hermite", {}),
    FamilySpec("askey_wilson", {"a": F(1, 2), "b": F(1, 3), "c": F(-1, 4), "d": F(2, 5)}, q=F(1, 3)),
    FamilySpec("continuous_q_hermite", {}, q=F(1, 3)),
    FamilySpec("q_racah", {"alpha": F(1, 3), "beta": F(1, 5), "gamma": F(16), "delta": F(1, 7)}, q=F(1, 2)),
    FamilySpec("racah", {"alpha": F(1, 3), "beta": F(1, 5), "gamma": F(-5), "delta": F(1, 7)}),
    FamilySpec("wilson", {"a": F(1, 2), "b": F(1, 3), "c": F(1, 4), "d": F(1, 5)}),
    FamilySpec("continuous_dual_hahn", {"a": F(1, 2), "b": F(1, 3), "c": F(1, 4)}),
    FamilySpec("krawtchouk", {"p": F(1, 3), "N": 5}),
    FamilySpec("hahn", {"alpha": F(1, 3), "beta": F(2, 5), "N": 5}),
    FamilySpec("big_q_jacobi", {"a": F(1, 3), "b": F(1, 4), "c": F(1, 2), "d": F(1, 5)}, q=F(1, 3)),
    FamilySpec("little_q_jacobi", {"a": F(1, 3), "b": F(1, 4)}, q=F(1, 3)),
    FamilySpec("wall", {"a": F(1, 3)}, q=F(1, 2)),
    FamilySpec("discrete_q_hermite_I", {}, q=F(1, 2)),
]


@pytest.mark.parametrize("spec", RECURRENCE_CASES, ids=lambda s: s.family_id)
def test_three_term_recurrence(spec):
    assert three_term_recurrence_check(spec, 6)["status"] == "pass"


def test_q_racah_range_check():
    q = F(1, 2)
    p = q_racah(2, F(1, 3), F(1, 5), q**-4, F(1, 7), q)
    assert p.degree == 2
