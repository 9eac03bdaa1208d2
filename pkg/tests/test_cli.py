import json

import pytest

from quadtrans import cli, quad1
from quadtrans.errors import ConfigParseError, UnknownId

SMALL = """\
# two cheap jobs
kind: identity
id: J-even
alpha: 1/3, 2
n_max: 4

kind: lowering
id: gegenbauer_61
alpha: 1/4
"""


def test_parse_suite_grid_and_options():
    cfg = cli.parse_suite(SMALL, "small")
    assert [j.id for j in cfg.jobs] == ["J-even", "gegenbauer_61"]
    job = cfg.jobs[0]
    assert job.options == {"n_max": 4}
    assert [str(a) for a in job.grid["alpha"]] == ["1/3", "2"]
    assert job.line == 2


@pytest.mark.parametrize("text,line", [
    ("kind: identity\nid: J-even\nalpha: 1/3\nalpha: 2\n", 4),
    ("kind: identity\nid: J-even\nthis line has no colon\n", 3),
    ("kind: identity\nid: J-even\nn_max: six\n", 3),
    ("\n\nkind: nonsense\nid: J-even\n", 3),
    ("kind: identity\nid: J-even\nalpha: 1/0\n", 3),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ConfigParseError) as exc:
        cli.parse_suite(text)
    assert exc.value.line == line


def test_float_literals_rejected():
    with pytest.raises(ConfigParseError) as exc:
        cli.parse_suite("kind: identity\nid: J-even\nalpha: 0.5\n")
    assert exc.value.line == 3
    with pytest.raises(ConfigParseError):
        cli.parse_suite("kind: bc2\nid: bc2-crosscheck\ntolerance: 1e-18\n")


def test_unknown_id():
    with pytest.raises(UnknownId):
        cli.parse_suite("kind: identity\nid: J-sideways\n")
    with pytest.raises(UnknownId):
        cli.parse_suite("kind: limit\nid: J-even\n")


def test_missing_kind():
    with pytest.raises(ConfigParseError):
        cli.parse_suite("id: J-even\n")


def test_empty_suite_passes():
    report, status = cli.run_suite(cli.parse_suite("# nothing here\n\n", "empty"))
    assert status == 0
    assert report["status"] == "pass" and report["jobs"] == []


def test_report_deterministic_apart_from_timing():
    a, _ = cli.run_suite(cli.parse_suite(SMALL, "small"))
    b, _ = cli.run_suite(cli.parse_suite(SMALL, "small"))
    assert cli.report_json(a, timing=False) == cli.report_json(b, timing=False)
    data = json.loads(cli.report_json(a))
    assert "timing" in data and data["counts"]["pass"] == 2


def test_skip_option():
    text = SMALL.replace("n_max: 4", "n_max: 4\nskip: yes")
    report, status = cli.run_suite(cli.parse_suite(text))
    assert status == 0
    assert report["jobs"][0]["status"] == "skipped"
    assert report["counts"]["skipped"] == 1


def test_corrupted_record_fails_with_witness(monkeypatch):
    real = quad1.lookup
    monkeypatch.setattr(quad1, "lookup", lambda rid: quad1.drop_prefactor(real(rid)) if rid == "J-odd" else real(rid))
    cfg = cli.parse_suite("kind: identity\nid: J-odd\nalpha: 1/3\nn_max: 3\n")
    report, status = cli.run_suite(cfg)
    assert status == 1
    job = report["jobs"][0]
    assert job["status"] == "fail"
    assert job["witness"]["error"] == "IdentityFailure"
    assert job["witness"]["detail"]["n"] == 0


def test_list_filter():
    rows = cli.list_catalog("qRacah")
    assert len(rows) >= 4
    assert all("qracah" in r[0].lower() for r in rows)
    assert cli.list_catalog("no-such-thing") == []


def test_main_list(capsys):
    assert cli.main(["list", "no-such-thing"]) == 0
    assert capsys.readouterr().out == ""
    assert cli.main(["list", "Jacobi"]) == 0
    assert "Jacobi-Hermite" in capsys.readouterr().out


def test_main_verify(capsys):
    assert cli.main(["verify", "HL-even", "--n-max", "5", "--format", "json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["status"] == "pass"
    assert cli.main(["verify", "J-even", "--param", "alpha=1/3,2"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_main_errors(tmp_path, capsys):
    bad = tmp_path / "bad.suite"
    bad.write_text("kind: identity\nid: J-even\nalpha: 0.25\n")
    assert cli.main(["suite", str(bad)]) == 1
    assert "line 3" in capsys.readouterr().err
    assert cli.main(["verify", "nope"]) == 1
    assert cli.main(["suite", str(tmp_path / "missing.suite")]) == 1


def test_main_suite_writes_json_and_report_renders(tmp_path, capsys):
    suite = tmp_path / "small.suite"
    suite.write_text(SMALL)
    out = tmp_path / "r.json"
    assert cli.main(["suite", str(suite), "--json", str(out)]) == 0
    capsys.readouterr()
    assert json.loads(out.read_text())["suite"] == "small"
    assert cli.main(["report", str(out), "--format", "table"]) == 0
    assert "PASS: 2 pass" in capsys.readouterr().out


def test_failing_suite_exit_status(tmp_path):
    suite = tmp_path / "fail.suite"
    # K = 5 terms leave a tail bound far above the tolerance
    suite.write_text("kind: orthogonality\nid: qintegral-display\nq: 1/2\nK: 5\ntolerance: 1/100000000000000000000\n")
    assert cli.main(["suite", str(suite)]) == 1


def test_bundled_core_suite_passes():
    report, status = cli.run_suite(cli.load_suite("paper-core"))
    assert status == 0, [j for j in report["jobs"] if j["status"] == "fail"]
    assert report["counts"]["fail"] == 0
