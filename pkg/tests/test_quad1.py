from fractions import Fraction as F

import pytest

from quadtrans import quad1
from quadtrans.errors import IdentityFailure, UnknownId, ValidityViolated
from quadtrans.families1 import ALIASES, FAMILIES

RECORDS = quad1.catalog()


@pytest.mark.parametrize("record", RECORDS, ids=lambda r: r.id)
def test_catalog_record_over_defaults(record):
    for params in record.defaults:
        rep = quad1.verify_identity(record, params, n_max=6)
        assert rep["status"] == "pass"
        assert rep["checked"]


@pytest.mark.parametrize("record", RECORDS, ids=lambda r: r.id)
def test_families_are_known(record):
    for side in (record.lhs, record.rhs):
        assert side.family in FAMILIES or side.family in ALIASES


def _fails_with_witness(record, params):
    with pytest.raises(IdentityFailure) as exc:
        quad1.verify_identity(record, params, n_max=6)
    assert exc.value.witness
    return exc.value.witness


MUTATION_IDS = ["J-odd", "AW-odd", "dqH-Wall-even", "qRacah-odd", "Krawtchouk-dualHahn-odd-2N1", "cHahn-Wilson-odd"]


@pytest.mark.parametrize("rid", MUTATION_IDS)
def test_dropping_prefactor_is_detected(rid):
    rec = quad1.lookup(rid)
    _fails_with_witness(quad1.drop_prefactor(rec), rec.defaults[0])


@pytest.mark.parametrize("record", RECORDS, ids=lambda r: r.id)
def test_perturbing_parameter_map_is_detected(record):
    # the largest parameter set: finite families need enough degrees to see the change
    _fails_with_witness(quad1.perturb_parameter_map(record), record.defaults[-1])


def test_printed_hahn_racah_odd_parameter_fails():
    # the odd Hahn -> Racah case with alpha + 1 in place of alpha on the right
    rec = quad1.lookup("Hahn-Racah-odd")
    _fails_with_witness(quad1.perturb_parameter_map(rec, "alpha", 1), rec.defaults[1])


def test_perturbing_argument_map_is_detected():
    rec = quad1.lookup("J-even")
    _fails_with_witness(quad1.perturb_argmap(rec), rec.defaults[2])


def test_nonstandard_needs_grid_beyond_half_range():
    rec = quad1.lookup("qRacah-nonstandard-even")
    P = rec.defaults[0]
    with pytest.raises(ValidityViolated):
        quad1.verify_identity(rec, P, n_max=3, check_level="polynomial")
    rep = quad1.verify_identity(rec, P, n_max=3)
    levels = {c["n"]: c["level"] for c in rep["checked"]}
    assert levels[0] == "polynomial" and levels[2] == "gridpoints"


def test_unknown_record():
    with pytest.raises(UnknownId):
        quad1.lookup("no-such-record")


@pytest.mark.parametrize("record", RECORDS, ids=lambda r: r.id)
def test_record_text_round_trip(record):
    text = quad1.record_to_text(record)
    assert quad1.record_from_text(text) is record


def test_record_text_mismatch_rejected():
    text = quad1.record_to_text(quad1.lookup("J-even")).replace("mode: ratio", "mode: direct")
    with pytest.raises(ValueError):
        quad1.record_from_text(text)


@pytest.mark.parametrize("which", sorted(quad1.QHYP_IDENTITIES))
def test_qhyp_random_instances(which):
    rep = quad1.run_qhyp_random(which, count=50, seed=0)
    assert rep["count"] == 50


def test_aw_weight_factorization():
    rep = quad1.verify_weight_factorization("AW_pair", {"a": F(1, 2), "b": F(1, 3), "q": F(1, 4)})
    assert rep["status"] == "pass" and rep["points"] == 16


def test_aw_reparam_weight_factorization():
    rep = quad1.verify_weight_factorization("AW_reparam", {"a": F(1, 2), "b": F(1, 3), "p": F(1, 2)})
    assert rep["status"] == "pass"
