import dataclasses
from fractions import Fraction as F

import pytest

from quadtrans import limits
from quadtrans.errors import DivergentPath, IdentityFailure, OrderBelowExpected, ParameterOutOfRange
from quadtrans.families1 import ALIASES, FAMILIES, jacobi
from quadtrans.limits import LIMIT_RECORDS, LOWERINGS, verify_limit, verify_lowering

IDS = sorted(LIMIT_RECORDS)


@pytest.mark.parametrize("rid", IDS)
def test_limit_default_path(rid):
    rep = verify_limit(rid)
    assert rep["status"] == "pass"
    if rep["observed_order"] is not None:
        assert rep["observed_order"] >= 0.9 * rep["expected_order"]


@pytest.mark.parametrize("rid", IDS)
def test_limit_degree_zero_is_trivial(rid):
    rep = verify_limit(rid, n=0)
    assert rep["status"] == "pass"
    assert all(r["error"] == 0 for r in rep["path"])


@pytest.mark.parametrize("rid", IDS)
def test_limit_families_are_known(rid):
    rec = LIMIT_RECORDS[rid]
    for fam in (rec.source_family, rec.target_family):
        assert fam in FAMILIES or fam in ALIASES


def test_big_q_jacobi_to_discrete_q_hermite_example():
    rep = verify_limit("bigqJ-dqH", n=2, points=(F(1, 3), F(-1, 2)))
    assert rep["status"] == "pass"
    assert rep["observed_order"] >= 0.9


def test_q_racah_to_little_q_jacobi_skips_small_N():
    rep = verify_limit("qRacah-littleqJ", path=range(4, 13))
    assert [s["m"] for s in rep["skipped"]] == [4, 5]
    assert [r["m"] for r in rep["path"]] == list(range(6, 13))
    assert rep["observed_order"] >= 0.9


def test_wrong_target_is_rejected():
    rec = LIMIT_RECORDS["Jacobi-Laguerre"]
    bad = dataclasses.replace(rec, target=lambda n, p: rec.target(n, p) * 2)
    with pytest.raises((DivergentPath, OrderBelowExpected)):
        verify_limit(bad)


def test_slow_path_is_rejected():
    # halving the path exponent leaves order 1/2 in eps
    rec = LIMIT_RECORDS["Jacobi-Laguerre"]
    slow = dataclasses.replace(rec, path=lambda m, p: (rec.path(m, p)[0], rec.path(m, p)[1] ** 2))
    with pytest.raises(OrderBelowExpected) as exc:
        verify_limit(slow)
    assert exc.value.report["observed_order"] < 0.9


def test_unknown_mode():
    with pytest.raises(ParameterOutOfRange):
        verify_limit("AW-Wilson", mode="exact-path")


@pytest.mark.parametrize("which", LOWERINGS)
@pytest.mark.parametrize("alpha", [F(1, 3), F(1, 4), F(2)])
def test_lowering_identities(which, alpha):
    betas = [F(1, 3), F(1, 4), F(2)] if which == "jacobi_general" else [None]
    for beta in betas:
        rep = verify_lowering(which, alpha, beta, n_max=6)
        assert rep["checked"] == list(range(7))


def test_lowering_detects_wrong_normalization(monkeypatch):
    monkeypatch.setattr(limits, "jacobi", lambda n, a, b: jacobi(n, a, b) * (n + 1))
    with pytest.raises(IdentityFailure) as exc:
        verify_lowering("gegenbauer_61", F(1, 3))
    assert exc.value.witness["degree"] >= 1


def test_lowering_argument_checks():
    with pytest.raises(ParameterOutOfRange):
        verify_lowering("jacobi_general", F(1, 3))
    with pytest.raises(KeyError):
        verify_lowering("hermite", F(1, 3))
