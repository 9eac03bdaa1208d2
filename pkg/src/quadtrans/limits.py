"""Limit arrows between the families, checked as convergence rates.

A :class:`LimitRecord` scales a source polynomial along a parameter path
(``a = 2^-m``, ``N -> oo`` or ``q = 1 - 2^-m``) and compares it with the target
polynomial at a few points.  :func:`verify_limit` fits the slope of
``log(error)`` against ``log(eps)`` by least squares and requires it to reach
0.9 times the record's expected order.

:func:`verify_lowering` checks the Gegenbauer/Jacobi lowering formulas as
exact polynomial identities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from .errors import (
    DegreeOutOfRange,
    DivergentPath,
    IdentityFailure,
    LowerParameterPole,
    OrderBelowExpected,
    ParameterOutOfRange,
)
from .families1 import (
    ALIASES,
    FAMILIES,
    askey_wilson,
    big_q_jacobi,
    continuous_dual_hahn,
    continuous_hahn,
    discrete_q_hermite_I,
    hermite,
    jacobi,
    laguerre,
    little_q_jacobi,
    q_racah,
    wilson,
)
from .poly import Polynomial1
from .scalar import DEFAULT_PREC, GaussRat, is_exact, pochhammer, to_mp

__all__ = [
    "LimitRecord",
    "LIMIT_RECORDS",
    "LOWERINGS",
    "verify_limit",
    "verify_lowering",
]

I = GaussRat(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class LimitRecord:
    """One limit arrow.

    ``source(n, t, params)`` returns a callable ``x -> value`` for the scaled
    source at path value ``t``; ``target(n, params)`` returns the limit
    callable.  ``path(m, params)`` maps a path index to ``(t, eps)``.
    """

    id: str
    arrow: str
    source_family: str
    target_family: str
    source: Callable
    target: Callable
    path: Callable
    scaling: str
    path_text: str
    params: dict = field(default_factory=dict)
    points: tuple = (Fraction(1, 3), Fraction(-1, 2))
    order: int = 1
    modes: tuple = ("exact-path", "float-path")
    default_path: tuple = tuple(range(4, 13))
    n: int = 2

    @property
    def default_mode(self):
        return self.modes[0]

    def describe(self):
        return {
            "id": self.id,
            "arrow": self.arrow,
            "source": self.source_family,
            "target": self.target_family,
            "scaling": self.scaling,
            "path": self.path_text,
            "order": self.order,
            "modes": list(self.modes),
            "params": {k: str(v) for k, v in self.params.items()},
        }


def _fr(v):
    return v if not isinstance(v, int) else Fraction(v)


def _mp_params(params):
    return {k: to_mp(v) for k, v in params.items()}


# ---------------------------------------------------------------------------
# paths


def _halving(m, p):
    t = Fraction(1, 2**m)
    return t, t


def _doubling(m, p):
    t = Fraction(2**m)
    return t, 1 / t


def _n_to_inf(m, p):
    return m, p["q"] ** m


def _q_to_one(m, p):
    e = Fraction(1, 2**m)
    return 1 - e, e


# ---------------------------------------------------------------------------
# q-case arrows


def _aw_b0_src(n, b, p):
    a, q = p["a"], p["q"]
    return askey_wilson(n, a, b, -a, -b, q, "monic")


def _aw_b0_tgt(n, p):
    a, q = p["a"], p["q"]
    return askey_wilson(n, a, 0, -a, 0, q, "monic")


def _aw_ab0_src(n, a, p):
    return askey_wilson(n, a, 0, -a, 0, p["q"], "monic")


def _aw_ab0_tgt(n, p):
    return askey_wilson(n, 0, 0, 0, 0, p["q"], "monic")


def _aw_bigqj_src(n, A, p):
    a, q = p["a"], p["q"]
    P = askey_wilson(n, A, a * q / A, -A, -a * q / A, q, "ratio")

    def f(x):
        z = q * a * x / A
        return P((z + 1 / z) / 2)

    return f


def _bigqj_tgt(n, p):
    return big_q_jacobi(n, p["a"], p["a"], 1, 1, p["q"])


def _bigqj_dqh_src(n, a, p):
    return big_q_jacobi(n, a, a, 1, 1, p["q"]) / a**n


def _bigqj_dqh_tgt(n, p):
    q = p["q"]
    return discrete_q_hermite_I(n, q) * q**n


def _qracah_bigqj_src(n, N, p):
    a, q = p["a"], p["q"]
    R = q_racah(n, a, a, q ** (-2 * N - 2), -1, q)
    s = q ** (-2 * N - 1)
    return lambda x: R(s * x)


def _qracah_bigqj_tgt(n, p):
    P = _bigqj_tgt(n, p)
    anchor = P(-1)
    return lambda x: P(x) / anchor


def _qracah_littleqj_src(n, N, p):
    a, b, d, q = p["a"], p["b"], p["delta"], p["q"]
    R = q_racah(n, a, b, q ** (-N - 1), d * q ** (-N), q, check_range=False)
    s = q ** (-2 * N)
    return lambda x: R(s * x)


def _qracah_littleqj_tgt(n, p):
    a, b, d, q = p["a"], p["b"], p["delta"], p["q"]
    P = little_q_jacobi(n, b, a, q)
    anchor = P(1)
    return lambda x: P(x / d) / anchor


def _qracah_alpha0_src(n, alpha, p):
    q = p["q"]
    return q_racah(n, alpha, alpha, q ** (-2 * p["N"] - 2), -1, q)


def _qracah_alpha0_tgt(n, p):
    return _qracah_alpha0_src(n, 0, p)


def _qracah0_dqh_src(n, N, p):
    q = p["q"]
    R = q_racah(n, 0, 0, q ** (-2 * N - 2), -1, q)
    s = q ** (-2 * N - 1)
    return lambda x: R(s * x)


def _qracah0_dqh_tgt(n, p):
    h = discrete_q_hermite_I(n, p["q"])
    anchor = h(-1)
    return lambda x: h(x) / anchor


def _aw_b0_dqh_src(n, A, p):
    # monic in z, so the leading x-coefficient is 2^n
    P = askey_wilson(n, A, 0, -A, 0, p["q"], "monic")
    return lambda u: P(A * u / 2) / A**n


def _dqh_tgt(n, p):
    return discrete_q_hermite_I(n, p["q"])


# ---------------------------------------------------------------------------
# q -> 1 arrows (floating)


def _aw_wilson_src(n, q, p):
    a, b, c, d = (q ** p[k] for k in "abcd")
    P = askey_wilson(n, a, b, c, d, q, "paper")
    e = 1 - q
    return lambda x: P(1 - x * e * e / 2) / e ** (3 * n)


def _aw_wilson_tgt(n, p):
    return wilson(n, p["a"], p["b"], p["c"], p["d"])


def _phase(p):
    if not isinstance(p["phi_over_pi"], Fraction):
        phi = mpmath.pi * to_mp(p["phi_over_pi"])
        return mpmath.cos(phi), mpmath.sin(phi), mpmath.expj(phi)
    if p["phi_over_pi"] == Fraction(1, 2):
        return Fraction(0), Fraction(1), I
    raise ParameterOutOfRange("exact evaluation needs phi = pi/2")


def _aw_chahn_src(n, q, p):
    cos, sin, ph = _phase(p)
    a, b = p["a"], p["b"]
    P = askey_wilson(n, q**a * ph, q**b * ph, q**a / ph, q**b / ph, q, "paper")
    e = 1 - q
    return lambda x: P(cos - x * e * sin) / e ** (2 * n)


def _aw_chahn_tgt(n, p):
    cos, sin, ph = _phase(p)
    a, b = p["a"], p["b"]
    P = continuous_hahn(n, a, b, a, b)
    c = (-2 * sin) ** n * math.factorial(n)
    return lambda x: c * P(x)


def _bigqj_jacobi_src(n, q, p):
    a = q ** p["alpha"]
    return big_q_jacobi(n, a, a, 1, 1, q)


def _bigqj_jacobi_tgt(n, p):
    return jacobi(n, p["alpha"], p["alpha"], "ratio")


def _dqh_hermite_src(n, q, p):
    h = discrete_q_hermite_I(n, q)
    s = mpmath.sqrt(1 - q * q)
    return lambda x: h(x * s) / s**n


def _hermite_scaled_tgt(n, p):
    return hermite(n) / 2**n


def _cqh_hermite_src(n, q, p):
    h = askey_wilson(n, 0, 0, 0, 0, q, "monic")
    s = mpmath.sqrt((1 - q) / 2)
    return lambda x: h(x * s) / s**n


def _hermite_tgt(n, p):
    return hermite(n)


# ---------------------------------------------------------------------------
# q = 1 arrows


def _wilson_jacobi_src(n, t, p):
    al, be, a, c = p["alpha"], p["beta"], p["a"], p["c"]
    W = wilson(n, a, al + 1 - a, c + I * t, be + 1 - c - I * t)
    scale = t ** (2 * n) * math.factorial(n)
    return lambda x: W((1 - x) * t * t / 2) / scale


def _jacobi_tgt(n, p):
    return jacobi(n, p["alpha"], p["beta"])


def _cdhahn_laguerre_src(n, a, p):
    S = continuous_dual_hahn(n, a, p["b"], p["c"])
    scale = a**n * math.factorial(n)
    return lambda x: S(a * x) / scale


def _cdhahn_laguerre_tgt(n, p):
    return laguerre(n, p["b"] + p["c"] - 1)


def _jacobi_hermite_path(m, p):
    s = Fraction(2**m)
    return s, 1 / (s * s)


def _jacobi_hermite_src(n, s, p):
    al = s * s
    P = jacobi(n, al, al)
    return lambda x: P(x / s) / s**n


def _jacobi_hermite_tgt(n, p):
    return hermite(n) / (2**n * math.factorial(n))


def _jacobi_laguerre_src(n, beta, p):
    P = jacobi(n, p["alpha"], beta)
    return lambda x: P(1 - 2 * x / beta)


def _laguerre_tgt(n, p):
    return laguerre(n, p["alpha"])


_Q = Fraction(1, 2)


def _records():
    F = Fraction
    recs = [
        LimitRecord(
            "AW-b0", "q:1a->3a", "askey_wilson", "al_salam_chihara",
            _aw_b0_src, _aw_b0_tgt, _halving,
            "monic P_n(x; a, b, -a, -b | q)", "b = 2^-m -> 0",
            {"q": _Q, "a": F(1, 3)},
        ),
        LimitRecord(
            "AW-ab0", "q:3a->5", "askey_wilson", "continuous_q_hermite",
            _aw_ab0_src, _aw_ab0_tgt, _halving,
            "monic P_n(x; a, 0, -a, 0 | q)", "a = 2^-m -> 0",
            {"q": _Q},
        ),
        LimitRecord(
            "AW-bigqJ", "q:1a->2", "askey_wilson", "big_q_jacobi",
            _aw_bigqj_src, _bigqj_tgt, _halving,
            "4phi3 ratio form with parameters (A, aq/A, -A, -aq/A) at z = qax/A",
            "A = 2^-m -> 0",
            {"q": _Q, "a": F(1, 3)},
        ),
        LimitRecord(
            "bigqJ-dqH", "q:2->4", "big_q_jacobi", "discrete_q_hermite_I",
            _bigqj_dqh_src, _bigqj_dqh_tgt, _halving,
            "a^-n P_n(x; a, a, 1, 1; q) -> q^n h_n(x; q)", "a = 2^-m -> 0",
            {"q": _Q},
        ),
        LimitRecord(
            "qRacah-bigqJ", "q:1b->2", "q_racah", "big_q_jacobi",
            _qracah_bigqj_src, _qracah_bigqj_tgt, _n_to_inf,
            "R_n(q^(-2N-1) x; a, a, q^(-2N-2), -1 | q) -> P_n(x; a,a,1,1; q)/P_n(-1; a,a,1,1; q)",
            "N -> oo, eps = q^N",
            {"q": _Q, "a": F(1, 3)},
        ),
        LimitRecord(
            "qRacah-littleqJ", "q:1b->2", "q_racah", "little_q_jacobi",
            _qracah_littleqj_src, _qracah_littleqj_tgt, _n_to_inf,
            "R_n(q^(-2N) x; a, b, q^(-N-1), delta q^(-N) | q) -> p_n(x/delta; b, a; q)/p_n(1; b, a; q)",
            "N -> oo, eps = q^N",
            {"q": _Q, "a": F(1, 3), "b": F(1, 4), "delta": F(1, 2)},
        ),
        LimitRecord(
            "qRacah-alpha0", "q:1b->3b", "q_racah", "dual_q_krawtchouk",
            _qracah_alpha0_src, _qracah_alpha0_tgt, _halving,
            "R_n(y; alpha, alpha, q^(-2N-2), -1 | q)", "alpha = 2^-m -> 0",
            {"q": _Q, "N": 3},
        ),
        LimitRecord(
            "qRacah0-dqH", "q:3b->4", "dual_q_krawtchouk", "discrete_q_hermite_I",
            _qracah0_dqh_src, _qracah0_dqh_tgt, _n_to_inf,
            "R_n(q^(-2N-1) x; 0, 0, q^(-2N-2), -1 | q) -> h_n(x; q)/h_n(-1; q)",
            "N -> oo, eps = q^N",
            {"q": _Q},
        ),
        LimitRecord(
            "AW-b0-dqH", "q:3a->4", "al_salam_chihara", "discrete_q_hermite_I",
            _aw_b0_dqh_src, _dqh_tgt, _doubling,
            "(2/A)^n P_n(A x/2; A, 0, -A, 0 | q) monic -> h_n(x; q)", "A = 2^m -> oo, eps = 1/A",
            {"q": _Q},
        ),
        LimitRecord(
            "AW-Wilson", "q->1:1a", "askey_wilson", "wilson",
            _aw_wilson_src, _aw_wilson_tgt, _q_to_one,
            "p_n(1 - x(1-q)^2/2; q^a, q^b, q^c, q^d | q)/(1-q)^(3n) -> W_n(x; a, b, c, d)",
            "q = 1 - 2^-m -> 1, eps = 1 - q",
            {"q": None, "a": F(1, 2), "b": F(1, 3), "c": F(1, 4), "d": F(1, 5)},
            points=(F(1, 3), F(2)),
            modes=("float-path",),
        ),
        LimitRecord(
            "AW-cHahn", "q->1:1a", "askey_wilson", "continuous_hahn",
            _aw_chahn_src, _aw_chahn_tgt, _q_to_one,
            "p_n(cos phi - x(1-q) sin phi; q^a e^(i phi), q^b e^(i phi), q^a e^(-i phi), q^b e^(-i phi) | q)/(1-q)^(2n)"
            " -> (-2 sin phi)^n n! p_n(x; a, b, a, b)",
            "q = 1 - 2^-m -> 1, eps = 1 - q",
            {"q": None, "a": F(1, 2), "b": F(1, 3), "phi_over_pi": F(1, 2)},
            modes=("float-path",),
        ),
        LimitRecord(
            "bigqJ-Jacobi", "q->1:2", "big_q_jacobi", "jacobi",
            _bigqj_jacobi_src, _bigqj_jacobi_tgt, _q_to_one,
            "P_n(x; q^alpha, q^alpha, 1, 1; q) -> P_n^(alpha,alpha)(x)/P_n^(alpha,alpha)(1)",
            "q = 1 - 2^-m -> 1, eps = 1 - q",
            {"q": None, "alpha": F(1, 3)},
            modes=("float-path",),
        ),
        LimitRecord(
            "dqH-Hermite", "q->1:4", "discrete_q_hermite_I", "hermite",
            _dqh_hermite_src, _hermite_scaled_tgt, _q_to_one,
            "h_n(x sqrt(1-q^2); q)/(1-q^2)^(n/2) -> 2^-n H_n(x)",
            "q = 1 - 2^-m -> 1, eps = 1 - q",
            {"q": None},
            modes=("float-path",),
        ),
        LimitRecord(
            "cqH-Hermite", "q->1:5->4", "continuous_q_hermite", "hermite",
            _cqh_hermite_src, _hermite_tgt, _q_to_one,
            "H_n(x sqrt((1-q)/2) | q)/((1-q)/2)^(n/2) -> H_n(x)",
            "q = 1 - 2^-m -> 1, eps = 1 - q",
            {"q": None},
            modes=("float-path",),
        ),
        LimitRecord(
            "Wilson-Jacobi", "1:1a->2", "wilson", "jacobi",
            _wilson_jacobi_src, _jacobi_tgt, _doubling,
            "W_n((1-x) t^2/2; a, alpha+1-a, c+it, beta+1-c-it)/(t^(2n) n!) -> P_n^(alpha,beta)(x)",
            "t = 2^m -> oo, eps = 1/t",
            {"alpha": F(1, 2), "beta": F(1, 3), "a": F(1, 4), "c": F(1, 5)},
        ),
        LimitRecord(
            "cdHahn-Laguerre", "1:3a->4", "continuous_dual_hahn", "laguerre",
            _cdhahn_laguerre_src, _cdhahn_laguerre_tgt, _doubling,
            "S_n(a x; a, b, c)/(a^n n!) -> L_n^(b+c-1)(x)", "a = 2^m -> oo, eps = 1/a",
            {"b": F(1, 3), "c": F(1, 4)},
        ),
        LimitRecord(
            "Jacobi-Hermite", "1:2->4", "jacobi", "hermite",
            _jacobi_hermite_src, _jacobi_hermite_tgt, _jacobi_hermite_path,
            "alpha^(-n/2) P_n^(alpha,alpha)(x/sqrt(alpha)) -> H_n(x)/(2^n n!)",
            "alpha = 4^m -> oo, eps = 1/alpha",
            {},
        ),
        LimitRecord(
            "Jacobi-Laguerre", "1:2->4", "jacobi", "laguerre",
            _jacobi_laguerre_src, _laguerre_tgt, _doubling,
            "P_n^(alpha,beta)(1 - 2x/beta) -> L_n^alpha(x)", "beta = 2^m -> oo, eps = 1/beta",
            {"alpha": F(1, 3)},
        ),
    ]
    return {r.id: r for r in recs}


LIMIT_RECORDS = _records()


def _family_known(name):
    return name in FAMILIES or name in ALIASES


# ---------------------------------------------------------------------------


def _float_params(params):
    return {k: (v if v is None else to_mp(v)) for k, v in params.items()}


def _lift(f, mode):
    if mode == "float-path" and isinstance(f, Polynomial1):
        return f.map_coeffs(to_mp)
    return f


def verify_limit(record, n=None, points=None, path=None, mode=None, params=None, prec=DEFAULT_PREC):
    """Check convergence of ``record`` along its path.

    Returns a report dict with one row per path point and the fitted order.
    Path points where the source is undefined (a lower parameter pole for
    small N) are skipped and listed.
    """
    if isinstance(record, str):
        record = LIMIT_RECORDS[record]
    n = record.n if n is None else n
    mode = mode or record.default_mode
    if mode not in record.modes:
        raise ParameterOutOfRange(f"{record.id} supports modes {record.modes}, not {mode!r}")
    p = dict(record.params)
    if params:
        p.update(params)
    points = tuple(points if points is not None else record.points)
    path = tuple(path if path is not None else record.default_path)
    rows, skipped = [], []
    with mpmath.workprec(prec):
        if mode == "float-path":
            p = _float_params(p)
            points = tuple(to_mp(x) for x in points)
        else:
            p = {k: _fr(v) for k, v in p.items()}
            points = tuple(_fr(x) for x in points)
        floor = mpmath.eps * 2**40
        tgt = _lift(record.target(n, p), mode)
        exact_target = [tgt(x) for x in points]
        for m in path:
            t, eps = record.path(m, p)
            if mode == "float-path":
                t, eps = to_mp(t), to_mp(eps)
            pp = dict(p)
            if "q" in pp and pp["q"] is None:
                pp["q"] = t
            try:
                src = _lift(record.source(n, t, pp), mode)
            except (LowerParameterPole, DegreeOutOfRange) as exc:
                skipped.append({"m": m, "reason": str(exc)})
                continue
            err = max(abs(to_mp(src(x)) - to_mp(y)) for x, y in zip(points, exact_target))
            if mode == "float-path" and err <= floor * max(1, max(abs(to_mp(y)) for y in exact_target)):
                err = 0
            rows.append({"m": m, "eps": float(to_mp(eps)), "error": float(err) if err else 0.0, "_err": err})
        report = {
            "id": record.id,
            "arrow": record.arrow,
            "n": n,
            "mode": mode,
            "points": [str(x) for x in points],
            "path": [{k: v for k, v in r.items() if k != "_err"} for r in rows],
            "skipped": skipped,
            "expected_order": record.order,
            "observed_order": None,
            "status": "pass",
        }
        nz = [r for r in rows if r["_err"] != 0]
        if not nz:
            return report
        if len(nz) < 2:
            raise DivergentPath(f"{record.id}: fewer than two usable path points")
        xs = [float(mpmath.log(to_mp(r["eps"]))) for r in nz]
        ys = [float(mpmath.log(r["_err"])) for r in nz]
        mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
        sxx = sum((x - mx) ** 2 for x in xs)
        slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx
        report["observed_order"] = slope
    if nz[-1]["_err"] >= nz[0]["_err"]:
        report["status"] = "fail"
        raise DivergentPath(f"{record.id}: error does not decrease along the path ({report['path']})")
    if slope < 0.9 * record.order:
        report["status"] = "fail"
        exc = OrderBelowExpected(f"{record.id}: observed order {slope:.3f} < {0.9 * record.order}")
        exc.report = report
        raise exc
    return report


# ---------------------------------------------------------------------------
# lowering formulas

LOWERINGS = ("gegenbauer_61", "jacobi_minus_half", "jacobi_plus_half", "jacobi_general")

_X = Polynomial1([0, 1])
_ONE_PLUS_X2 = Polynomial1([1, 0, 1])
_X2_MINUS_ONE = Polynomial1([-1, 0, 1])


def _homogenized_gegenbauer(n, alpha):
    # (1+x^2)^(n/2) P_n(x/sqrt(1+x^2)); only j = n mod 2 terms occur
    P = jacobi(n, alpha, alpha)
    out = Polynomial1()
    for j in range(n + 1):
        c = P.coeff(j)
        if c != 0:
            out = out + _X**j * _ONE_PLUS_X2 ** ((n - j) // 2) * c
    return out


def _homogenized_jacobi(n, alpha, beta):
    # (1+x^2)^n P_n((x^2-1)/(x^2+1))
    P = jacobi(n, alpha, beta)
    out = Polynomial1()
    for j in range(n + 1):
        c = P.coeff(j)
        if c != 0:
            out = out + _X2_MINUS_ONE**j * _ONE_PLUS_X2 ** (n - j) * c
    return out


def _lowering_sides(which, n, alpha, beta):
    zero = Polynomial1()
    if which == "gegenbauer_61":
        G = _homogenized_gegenbauer(n, alpha)
        prev = _homogenized_gegenbauer(n - 1, alpha) if n else zero
        return G.derivative(), prev * (n + alpha)
    if which == "jacobi_minus_half":
        beta = Fraction(-1, 2)
    elif which == "jacobi_plus_half":
        beta = Fraction(1, 2)
    elif which != "jacobi_general":
        raise KeyError(f"unknown lowering formula {which!r}")
    F = _homogenized_jacobi(n, alpha, beta)
    prev = _homogenized_jacobi(n - 1, alpha, beta) if n else zero
    lam = 4 * (n + alpha) * (n + beta)
    d1, d2 = F.derivative(), F.derivative().derivative()
    if which == "jacobi_minus_half":
        return d2, prev * lam
    # times x: x F'' + (2 beta + 1) F' = lam x F_{n-1}
    return _X * d2 + d1 * (2 * beta + 1), _X * prev * lam


def verify_lowering(which, alpha, beta=None, n_max=6):
    """Check the lowering formula ``which`` for all n <= n_max, exactly."""
    alpha = _fr(alpha)
    beta = _fr(beta) if beta is not None else None
    if which == "jacobi_general" and beta is None:
        raise ParameterOutOfRange("jacobi_general needs beta")
    checked = []
    for n in range(n_max + 1):
        lhs, rhs = _lowering_sides(which, n, alpha, beta)
        if lhs != rhs:
            deg = max(lhs.degree, rhs.degree, 0)
            i = next(i for i in range(deg + 1) if lhs.coeff(i) != rhs.coeff(i))
            raise IdentityFailure(
                f"{which} fails at n = {n}",
                {"degree": n, "coefficient": i, "lhs": lhs.coeff(i), "rhs": rhs.coeff(i)},
            )
        checked.append(n)
    return {"which": which, "alpha": str(alpha), "beta": None if beta is None else str(beta), "checked": checked, "status": "pass"}
