"""Command line: list the catalog, verify single records, run suites.

Suite files are line oriented::

    # comment
    kind: identity
    id: J-even
    alpha: -1/2, 0, 1/3
    n_max: 8

Blank lines separate jobs.  Every key that is not a job option is a parameter
whose value is a comma separated list of exact rationals written as ``p/q``
(or integers); the job runs over the Cartesian product of those lists.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import mpmath

from . import limits, measures, quad1, twovar
from .errors import ConfigParseError, QuadTransError, UnknownId
from .families1 import jacobi
from .scalar import DEFAULT_PREC, GaussRat, parse_scalar, to_mp

KINDS = ("identity", "qhyp", "orthogonality", "prop2var", "bc2", "koornwinder", "limit", "lowering")

# keys that configure a job rather than span the parameter grid
OPTIONS = {
    "kind": str,
    "id": str,
    "n_max": int,
    "n": int,
    "upto": int,
    "mode": str,
    "check_level": str,
    "engine": str,
    "tolerance": str,
    "seed": int,
    "count": int,
    "K": int,
    "M": int,
    "skip": str,
}

ORTHOGONALITY_IDS = ("qRacah-56", "jacobi", "split-master", "qintegral-display")
PROP2VAR_IDS = ("prop17", "prop20", "prop25", "laurent")
BC2_IDS = ("bc2-quadratic", "bc2-crosscheck")
KOORNWINDER_IDS = ("koornwinder-quadratic", "koornwinder-weight")

_FLOAT_LITERAL = re.compile(r"\d\.|\.\d|\d[eE][-+]?\d")


@dataclass
class Job:
    kind: str
    id: str
    grid: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)
    line: int = 0


@dataclass
class SuiteConfig:
    jobs: list
    name: str = ""


def parse_value(text, line=None):
    text = text.strip()
    if not text:
        raise ConfigParseError("empty value", line)
    if _FLOAT_LITERAL.search(text):
        raise ConfigParseError(f"floating literal {text!r}; write rationals as p/q", line)
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigParseError(f"cannot parse {text!r} as a rational", line) from exc


def _known_ids(kind):
    if kind == "identity":
        return [r.id for r in quad1.catalog()]
    if kind == "qhyp":
        return list(quad1.QHYP_IDENTITIES)
    if kind == "limit":
        return list(limits.LIMIT_RECORDS)
    if kind == "lowering":
        return list(limits.LOWERINGS)
    return list({"orthogonality": ORTHOGONALITY_IDS, "prop2var": PROP2VAR_IDS, "bc2": BC2_IDS,
                 "koornwinder": KOORNWINDER_IDS}[kind])


def _finish_job(fields, start_line):
    if "kind" not in fields:
        raise ConfigParseError("job without 'kind'", start_line)
    kind = fields.pop("kind")[0]
    if kind not in KINDS:
        raise ConfigParseError(f"unknown job kind {kind!r}", start_line)
    if "id" not in fields:
        raise ConfigParseError("job without 'id'", start_line)
    jid, id_line = fields.pop("id")
    if jid not in _known_ids(kind):
        raise UnknownId(f"line {id_line}: unknown {kind} id {jid!r}")
    options, grid = {}, {}
    for key, (raw, ln) in fields.items():
        if key in OPTIONS:
            conv = OPTIONS[key]
            try:
                options[key] = conv(raw.strip())
            except ValueError as exc:
                raise ConfigParseError(f"{key}: expected {conv.__name__}, got {raw!r}", ln) from exc
            if key == "tolerance":
                tol = parse_value(raw, ln)
                if tol <= 0:
                    raise ConfigParseError("tolerance must be positive", ln)
                options[key] = tol
        else:
            grid[key] = [parse_value(v, ln) for v in raw.split(",")]
    return Job(kind, jid, grid, options, start_line)


def parse_suite(text, name=""):
    """Parse suite text into a :class:`SuiteConfig`."""
    jobs = []
    fields, start = {}, None
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if fields:
                jobs.append(_finish_job(fields, start))
                fields, start = {}, None
            continue
        if ":" not in line:
            raise ConfigParseError(f"expected 'key: value', got {raw.strip()!r}", ln)
        key, value = (s.strip() for s in line.split(":", 1))
        if not key:
            raise ConfigParseError("empty key", ln)
        if key in fields:
            raise ConfigParseError(f"duplicate key {key!r}", ln)
        if start is None:
            start = ln
        fields[key] = (value, ln)
    if fields:
        jobs.append(_finish_job(fields, start))
    return SuiteConfig(jobs, name)


def load_suite(path):
    p = Path(path)
    if not p.exists():
        bundled = resources.files("quadtrans").joinpath("suites", f"{path}.suite")
        if not bundled.is_file():
            raise FileNotFoundError(path)
        return parse_suite(bundled.read_text(), str(path))
    return parse_suite(p.read_text(), p.stem)


# ---------------------------------------------------------------------------
# JSON helpers


def jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, float):
        return float(f"{v:.6g}")
    if isinstance(v, (Fraction, GaussRat)):
        return str(v)
    if isinstance(v, (mpmath.mpf, mpmath.mpc)):
        return mpmath.nstr(v, 12)
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    return str(v)


# ---------------------------------------------------------------------------
# job runners; each takes (job, params) and returns a result dict or raises


def _run_identity(job, P):
    record = quad1.lookup(job.id)
    params = dict(record.defaults[0]) if record.defaults else {}
    params.update(P)
    n_max = job.options.get("n_max", 6)
    return quad1.verify_identity(record, params, n_max, check_level=job.options.get("check_level", "auto"))


def _run_qhyp(job, P):
    if P:
        quad1.verify_qhyp_identity(job.id, P)
        return {"status": "pass", "count": 1}
    return quad1.run_qhyp_random(job.id, job.options.get("count", 50), job.options.get("seed", 0))


def _qracah56(P, n_max):
    q, alpha, N = Fraction(P.get("q", Fraction(2, 3))), P.get("alpha", Fraction(1, 2)), P.get("N", Fraction(3, 2))
    rec_e, rec_o = quad1.lookup("qRacah-even"), quad1.lookup("qRacah-odd")
    params = {"q": q, "alpha": alpha, "N": N}
    L = measures.discrete_qracah_functional(N, q, alpha, variant="56")
    M = int(2 * N + 1)
    top = M if n_max is None else min(M, n_max)
    out = {"lhs": measures.orthogonality_check(rec_e.lhs.spec(params), L, top)["n_max"]}
    shift = 2 * q ** (-M)
    Y = [y * y + shift for y in L.nodes]
    even = measures.DiscreteFinite(Y, L.weights)
    odd = measures.DiscreteFinite(Y, [w * y * y for y, w in zip(L.nodes, L.weights)])
    out["rhs_even"] = measures.orthogonality_check(rec_e.rhs.spec(params), even, top // 2)["n_max"]
    out["rhs_odd"] = measures.orthogonality_check(rec_o.rhs.spec(params), odd, (top - 1) // 2)["n_max"]
    out["status"] = "pass"
    return out


def _run_orthogonality(job, P):
    n_max = job.options.get("n_max")
    if job.id == "qRacah-56":
        return _qracah56(P, n_max)
    if job.id == "jacobi":
        a, b = P.get("alpha", Fraction(1, 3)), P.get("beta", Fraction(1, 4))
        L = measures.JacobiBetaRatio(a, b)
        return measures.orthogonality_check(lambda n: jacobi(n, a, b), L, n_max or 6)
    if job.id == "split-master":
        rng = random.Random(job.options.get("seed", 0))
        count = job.options.get("count", 20)
        for _ in range(count):
            measures.verify_split_master(measures.random_even_measure(rng), n_max or 5)
        return {"status": "pass", "count": count}
    # qintegral-display: p = x^j against v = 1 for j <= n_max
    q = Fraction(P.get("q", Fraction(1, 2)))
    K = job.options.get("K", 120)
    worst, bound = 0, 0
    for j in range(0, (n_max or 4) + 1):
        rep = measures.qintegral_display_check(measures.Polynomial1.monomial(j), lambda x: 1, q, K)
        if rep["status"] != "pass":
            raise QuadTransError(f"q-integral display exceeds its bound at p = x^{j}")
        worst, bound = max(worst, rep["difference"]), max(bound, rep["bound"])
    tol = job.options.get("tolerance")
    if tol is not None and bound > tol:
        raise QuadTransError(f"tail bound {float(bound):.3g} above tolerance {float(tol):.3g}")
    return {"status": "pass", "max_difference": worst, "bounds": {"tail": bound}}


def _run_prop2var(job, P):
    rng = random.Random(job.options.get("seed", 0))
    count = job.options.get("count", 10)
    up = job.options.get("upto", 2)
    upto = (up, up) if job.id in ("prop17", "prop20") else (up, max(up - 1, 0))
    for _ in range(count):
        if job.id in ("prop17", "prop20"):
            L = twovar.random_even_functional(rng)
            (twovar.verify_prop17 if job.id == "prop17" else twovar.verify_prop20)(L, upto=upto)
        else:
            L = twovar.random_lambda_functional(rng)
            if job.id == "prop25":
                twovar.verify_prop25(L, upto=upto)
            else:
                twovar.verify_laurent_prop(twovar.TorusFromLambda(L), upto=upto)
    return {"status": "pass", "count": count, "upto": list(upto)}


def _run_bc2(job, P):
    alpha, gamma = P.get("alpha", Fraction(1, 2)), P.get("gamma", Fraction(1, 2))
    if job.id == "bc2-quadratic":
        rep = twovar.verify_bc2_quadratic(alpha, gamma, upto=job.options.get("upto", 5),
                                          engine=job.options.get("engine", "exact"))
        return rep
    beta = P.get("beta", Fraction(1, 4))
    tol = job.options.get("tolerance", Fraction(1, 10**18))
    E = twovar.BC2Exact(alpha, beta, gamma)
    deg = job.options.get("upto", 8)
    with mpmath.workprec(DEFAULT_PREC):
        Q = twovar.BC2Quadrature(alpha, beta, gamma)
        worst = max(abs(Q.moment(i, j) - to_mp(E.moment(i, j))) for i in range(deg + 1) for j in range(deg + 1 - i))
        if worst > to_mp(tol):
            raise QuadTransError(f"quadrature and exact moments differ by {mpmath.nstr(worst, 5)}")
    return {"status": "pass", "max_difference": worst, "order": Q.order, "bounds": {"quadrature": Q.bound}}


def _run_koornwinder(job, P):
    p, t, a = P.get("p", Fraction(1, 2)), P.get("t", Fraction(1, 3)), P.get("a", Fraction(2, 5))
    if job.id == "koornwinder-weight":
        return twovar.verify_koornwinder_weight({"p": p, "t": t, "a": a}, K=job.options.get("K", 200))
    kw = {"upto": job.options.get("upto", 4), "M": job.options.get("M", 256)}
    if "K" in job.options:
        kw["K"] = job.options["K"]
    if "tolerance" in job.options:
        tol = job.options["tolerance"]
        kw["tol"] = mpmath.mpf(tol.numerator) / tol.denominator
    return twovar.verify_koornwinder_quadratic(p, t, a, **kw)


def _run_limit(job, P):
    return limits.verify_limit(job.id, n=job.options.get("n"), mode=job.options.get("mode"), params=P or None)


def _run_lowering(job, P):
    return limits.verify_lowering(job.id, P.get("alpha", Fraction(1, 3)), P.get("beta"), job.options.get("n_max", 6))


RUNNERS = {
    "identity": _run_identity,
    "qhyp": _run_qhyp,
    "orthogonality": _run_orthogonality,
    "prop2var": _run_prop2var,
    "bc2": _run_bc2,
    "koornwinder": _run_koornwinder,
    "limit": _run_limit,
    "lowering": _run_lowering,
}


def _cases(job):
    if job.kind == "identity" and not job.grid:
        # an identity job without a grid runs over the record's own parameter sets
        yield from (dict(d) for d in quad1.lookup(job.id).defaults or ({},))
        return
    keys = list(job.grid)
    for combo in itertools.product(*(job.grid[k] for k in keys)):
        yield dict(zip(keys, combo))


def _bounds(result):
    if not isinstance(result, dict):
        return {}
    out = dict(result.get("bounds", {}))
    for key in ("bound", "truncation_bound", "aliasing_bound", "combined_bound"):
        if key in result:
            out[key] = result[key]
    return out


def run_job(job):
    """Run every grid case of ``job``; returns ``(entry, seconds)``."""
    entry = {"kind": job.kind, "id": job.id, "line": job.line, "options": jsonable(job.options),
             "grid": jsonable(job.grid), "cases": 0, "passed": 0, "failed": 0, "witness": None, "bounds": {}}
    t0 = time.perf_counter()
    if str(job.options.get("skip", "")).lower() in ("yes", "true", "1"):
        entry["status"] = "skipped"
        return entry, 0.0
    for case in _cases(job):
        entry["cases"] += 1
        try:
            result = RUNNERS[job.kind](job, case)
        except QuadTransError as exc:
            entry["failed"] += 1
            if entry["witness"] is None:
                entry["witness"] = {"params": jsonable(case), "error": type(exc).__name__, "message": str(exc),
                                    "detail": jsonable(getattr(exc, "witness", None) or getattr(exc, "report", None))}
            continue
        entry["passed"] += 1
        for k, v in _bounds(result).items():
            entry["bounds"][k] = jsonable(v)
    entry["status"] = "pass" if entry["failed"] == 0 else "fail"
    return entry, time.perf_counter() - t0


def run_suite(config):
    """Run all jobs in order; returns ``(report, exit_status)``."""
    if isinstance(config, (str, Path)):
        config = load_suite(config)
    jobs, timing = [], []
    for i, job in enumerate(config.jobs):
        entry, secs = run_job(job)
        entry["index"] = i
        jobs.append(entry)
        timing.append({"index": i, "seconds": round(secs, 3)})
    status = "pass" if all(j["status"] != "fail" for j in jobs) else "fail"
    report = {
        "suite": config.name,
        "status": status,
        "counts": {s: sum(j["status"] == s for j in jobs) for s in ("pass", "fail", "skipped")},
        "jobs": jobs,
        "timing": {"total_seconds": round(sum(t["seconds"] for t in timing), 3), "jobs": timing},
    }
    return report, 0 if status == "pass" else 1


def report_json(report, timing=True):
    data = dict(report)
    if not timing:
        data.pop("timing", None)
    return json.dumps(data, indent=2, sort_keys=True)


def report_table(report):
    rows = [("#", "kind", "id", "status", "cases", "detail")]
    secs = {t["index"]: t["seconds"] for t in report.get("timing", {}).get("jobs", [])}
    for j in report["jobs"]:
        detail = ""
        if j.get("witness"):
            detail = f"{j['witness']['error']}: {j['witness']['message']}"
        elif j["index"] in secs:
            detail = f"{secs[j['index']]:.2f}s"
        rows.append((str(j["index"]), j["kind"], j["id"], j["status"], f"{j['passed']}/{j['cases']}", detail))
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r[:5], widths)) + "  " + r[5] for r in rows]
    c = report["counts"]
    lines.append(f"{report['status'].upper()}: {c['pass']} pass, {c['fail']} fail, {c['skipped']} skipped")
    return "\n".join(line.rstrip() for line in lines)


# ---------------------------------------------------------------------------
# catalog listing


def list_catalog(filter_text=None):
    """``(id, kind, reference)`` rows in a stable order, optionally filtered by substring."""
    rows = [(r.id, "identity", r.ref) for r in quad1.catalog()]
    rows += [(k, "qhyp", v[0]) for k, v in quad1.QHYP_IDENTITIES.items()]
    rows += [(r.id, "limit", f"{r.arrow}  {r.scaling}") for r in limits.LIMIT_RECORDS.values()]
    rows += [(k, "lowering", "lowering formula") for k in limits.LOWERINGS]
    rows += [(k, "orthogonality", "") for k in ORTHOGONALITY_IDS]
    rows += [(k, "prop2var", "") for k in PROP2VAR_IDS]
    rows += [(k, "bc2", "") for k in BC2_IDS]
    rows += [(k, "koornwinder", "") for k in KOORNWINDER_IDS]
    if filter_text:
        rows = [r for r in rows if filter_text.lower() in r[0].lower() or filter_text.lower() in r[1]]
    return rows


def _kind_of(jid):
    for kind in KINDS:
        if jid in _known_ids(kind):
            return kind
    raise UnknownId(jid)


# ---------------------------------------------------------------------------


def _parser():
    ap = argparse.ArgumentParser(prog="quadtrans", description="Verify quadratic transformations of orthogonal polynomials.")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("list", help="list catalog records")
    p.add_argument("filter", nargs="?")
    p = sub.add_parser("verify", help="verify one record")
    p.add_argument("id")
    p.add_argument("--param", action="append", default=[], metavar="K=V")
    p.add_argument("--n-max", type=int)
    p.add_argument("--format", choices=("json", "table"), default="table")
    p = sub.add_parser("suite", help="run a suite file (or a bundled suite name)")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.add_argument("--json", metavar="PATH", help="also write the JSON report here")
    p = sub.add_parser("report", help="render a saved JSON report, or run a suite and render it")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "table"), default="json")
    return ap


def _single_job(args):
    kind = _kind_of(args.id)
    grid = {}
    for item in args.param:
        if "=" not in item:
            raise ConfigParseError(f"--param expects k=v, got {item!r}")
        k, v = item.split("=", 1)
        grid[k.strip()] = [parse_value(x) for x in v.split(",")]
    options = {"n_max": args.n_max} if args.n_max is not None else {}
    return SuiteConfig([Job(kind, args.id, grid, options, 0)], args.id)


def _emit(report, fmt):
    print(report_json(report) if fmt == "json" else report_table(report))


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        if args.command == "list":
            for jid, kind, ref in list_catalog(args.filter):
                print(f"{jid}\t{kind}\t{ref}")
            return 0
        if args.command == "verify":
            report, status = run_suite(_single_job(args))
            _emit(report, args.format)
            return status
        if args.command == "suite":
            report, status = run_suite(args.file)
            if args.json:
                Path(args.json).write_text(report_json(report) + "\n")
            _emit(report, args.format)
            return status
        if args.command == "report":
            path = Path(args.file)
            if path.suffix == ".json":
                report = json.loads(path.read_text())
                status = 0 if report["status"] == "pass" else 1
            else:
                report, status = run_suite(args.file)
            _emit(report, args.format)
            return status
    except (ConfigParseError, UnknownId, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
