"""Catalog of one-variable quadratic transformations and their verifier.

Each :class:`IdentityRecord` describes an identity

    LHS_{d(n)}(x)  =  prefactor(x) * RHS_n(phi(x))

between two families, where ``phi`` is the argument map (``x -> x^2``,
``x -> 2x^2 - 1``, ``z -> z^2`` or a lattice relation such as
``Y = y^2 + 2 gamma q``).  ``mode="direct"`` compares both sides as they
stand; ``mode="ratio"`` compares ``LHS / l(LHS)`` with ``R / l(R)`` where
``R = prefactor * RHS o phi`` and ``l`` is evaluation at the record's anchor
(or the derivative there when ``anchor_kind="derivative"``), which makes the
check independent of how the families are normalized.

Polynomials are compared coefficient by coefficient with exact arithmetic.
Records whose right-hand side only holds on a finite lattice (``check_level``
``"gridpoints"`` beyond the polynomial-validity range) are compared at the
lattice nodes instead.
"""

from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from .errors import (
    AnchorVanishes,
    BoundExceeded,
    IdentityFailure,
    LowerParameterPole,
    NonTerminating,
    UnknownId,
    ValidityViolated,
)
from .families1 import FamilySpec, finite_range, make_polynomial
from .poly import Polynomial1, SymLaurent1, Z_PLUS_ZINV
from .scalar import (
    DEFAULT_PREC,
    GaussRat,
    I,
    hyp_terminating,
    pochhammer,
    q_pochhammer,
    qhyp_terminating,
    simplify,
    to_mp,
)

F = Fraction
HALF = F(1, 2)
X = Polynomial1.x()
ONE = Polynomial1([1])


@dataclass(frozen=True)
class Side:
    family: str
    params: Callable  # P -> dict of family parameters
    degree: Callable  # n -> degree
    q: Callable = None  # P -> base (None for q = 1 families)
    argmap: Callable = None  # P -> Polynomial1 composed into the family variable, or "z^2"
    normalization: str = "paper"
    text: str = ""

    def spec(self, P, normalization=None):
        return FamilySpec(self.family, self.params(P), self.q(P) if self.q else None, normalization or self.normalization)

    def poly(self, P, n, normalization=None, form="x"):
        p = make_polynomial(self.spec(P, normalization), n)
        if form == "z":
            p = SymLaurent1.from_x_poly(p)
            if self.argmap == "z^2":
                p = p.square_arg()
            return p
        if self.argmap is not None:
            p = p.compose(self.argmap(P))
        return p


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    ref: str
    lhs: Side
    rhs: Side
    prefactor: Callable = None  # (P, n) -> Polynomial1 / SymLaurent1
    prefactor_text: str = "1"
    mode: str = "direct"
    anchor: Callable = None  # P -> point
    anchor_kind: str = "value"
    form: str = "x"
    n_range: Callable = None  # P -> largest admissible n (None: unbounded)
    validity: Callable = None  # (P, n) -> True when the polynomial-level identity holds
    validity_text: str = "all n"
    check_level: str = "polynomial"
    grid: Callable = None  # P -> lattice points in the LHS variable
    grid_lhs_degree: Callable = None  # (P, n) -> LHS degree used on the grid
    defaults: tuple = ()
    perturb_key: str = None
    alias_of: str = None
    parity: str = "even"
    variable: str = "x"

    def prefactor_poly(self, P, n):
        if self.prefactor is None:
            return SymLaurent1([1]) if self.form == "z" else ONE
        return self.prefactor(P, n)


# ---------------------------------------------------------------------------
# helpers for parameter dictionaries


def _const(v):
    return lambda P: v


def _p(key):
    return lambda P: P[key]


def _q(P):
    return P["q"]


def _q2(P):
    return P["q"] * P["q"]


def _dbl(n):
    return 2 * n


def _dbl1(n):
    return 2 * n + 1


def _same(n):
    return n


def _sq(P):
    return Polynomial1([0, 0, 1])


def _cheb(P):
    return Polynomial1([-1, 0, 2])


def _x_pref(P, n):
    return X


def _grid(n_points):
    return [{"alpha": a} for a in n_points]


def _aw_defaults():
    out = []
    for q in (F(1, 4), F(2, 3)):
        for a, b in ((F(1, 2), F(1, 3)), (F(2, 5), F(-1, 5))):
            out.append({"q": q, "a": a, "b": b})
    return tuple(out)


# ---------------------------------------------------------------------------
# records


def _jacobi_records():
    defaults = tuple({"alpha": a} for a in (F(-1, 2), F(0), F(1, 3), F(2), F(7, 2)))
    lhs_e = Side("jacobi", lambda P: {"alpha": P["alpha"], "beta": P["alpha"]}, _dbl, text="P_{2n}^(alpha,alpha)(x)")
    lhs_o = dataclasses.replace(lhs_e, degree=_dbl1, text="P_{2n+1}^(alpha,alpha)(x)")
    rhs_e = Side("jacobi", lambda P: {"alpha": P["alpha"], "beta": -HALF}, _same, argmap=_cheb, text="P_n^(alpha,-1/2)(2x^2-1)")
    rhs_o = Side("jacobi", lambda P: {"alpha": P["alpha"], "beta": HALF}, _same, argmap=_cheb, text="P_n^(alpha,1/2)(2x^2-1)")
    common = dict(mode="ratio", anchor=_const(F(1)), defaults=defaults, perturb_key="beta")
    return [
        IdentityRecord("J-even", "P_{2n}^(a,a)(x)/P_{2n}^(a,a)(1) = P_n^(a,-1/2)(2x^2-1)/P_n^(a,-1/2)(1)", lhs_e, rhs_e, **common),
        IdentityRecord(
            "J-odd",
            "P_{2n+1}^(a,a)(x)/P_{2n+1}^(a,a)(1) = x P_n^(a,1/2)(2x^2-1)/P_n^(a,1/2)(1)",
            lhs_o,
            rhs_o,
            prefactor=_x_pref,
            prefactor_text="x",
            parity="odd",
            **common,
        ),
    ]


def _hl_records():
    lhs_e = Side("hermite", _const({}), _dbl, text="H_{2n}(x)")
    lhs_o = Side("hermite", _const({}), _dbl1, text="H_{2n+1}(x)")
    rhs_e = Side("laguerre", _const({"alpha": -HALF}), _same, argmap=_sq, text="L_n^(-1/2)(x^2)")
    rhs_o = Side("laguerre", _const({"alpha": HALF}), _same, argmap=_sq, text="L_n^(1/2)(x^2)")
    return [
        IdentityRecord(
            "HL-even", "H_{2n}(x)/H_{2n}(0) = L_n^(-1/2)(x^2)/L_n^(-1/2)(0)", lhs_e, rhs_e,
            mode="ratio", anchor=_const(F(0)), defaults=({},), perturb_key="alpha",
        ),
        IdentityRecord(
            "HL-odd", "H_{2n+1}(x)/H'_{2n+1}(0) = x L_n^(1/2)(x^2)/L_n^(1/2)(0)", lhs_o, rhs_o,
            prefactor=_x_pref, prefactor_text="x", mode="ratio", anchor=_const(F(0)), anchor_kind="derivative",
            defaults=({},), perturb_key="alpha", parity="odd",
        ),
    ]


def _aw_lhs(P):
    return {"a": P["a"], "b": P["b"], "c": -P["a"], "d": -P["b"]}


def _aw_records():
    defaults = _aw_defaults()
    lhs_e = Side("askey_wilson", _aw_lhs, _dbl, q=_q, normalization="monic", text="P_{2n}(z;a,b,-a,-b|q)")
    lhs_o = dataclasses.replace(lhs_e, degree=_dbl1, text="P_{2n+1}(z;a,b,-a,-b|q)")
    rhs_e = Side(
        "askey_wilson",
        lambda P: {"a": P["a"] ** 2, "b": P["b"] ** 2, "c": F(-1), "d": -P["q"]},
        _same, q=_q2, argmap="z^2", normalization="monic", text="P_n(z^2;a^2,b^2,-1,-q|q^2)",
    )
    rhs_o = Side(
        "askey_wilson",
        lambda P: {"a": P["a"] ** 2, "b": P["b"] ** 2, "c": -P["q"], "d": -P["q"] ** 2},
        _same, q=_q2, argmap="z^2", normalization="monic", text="P_n(z^2;a^2,b^2,-q,-q^2|q^2)",
    )
    zpref = lambda P, n: Z_PLUS_ZINV
    recs = [
        IdentityRecord(
            "AW-even", "P_{2n}(z;a,b,-a,-b|q) = P_n(z^2;a^2,b^2,-1,-q|q^2)", lhs_e, rhs_e,
            form="z", variable="z", defaults=defaults, perturb_key="a",
        ),
        IdentityRecord(
            "AW-odd", "P_{2n+1}(z;a,b,-a,-b|q) = (z+z^-1) P_n(z^2;a^2,b^2,-q,-q^2|q^2)", lhs_o, rhs_o,
            prefactor=zpref, prefactor_text="z+z^-1", form="z", variable="z", defaults=defaults,
            perturb_key="a", parity="odd",
        ),
    ]
    # ratio form in x = (z + 1/z)/2
    anchor = lambda P: (P["a"] + 1 / P["a"]) / 2
    lhs_re = dataclasses.replace(lhs_e, normalization="ratio", text="p_{2n}(x;a,b,-a,-b|q)")
    lhs_ro = dataclasses.replace(lhs_o, normalization="ratio", text="p_{2n+1}(x;a,b,-a,-b|q)")
    rhs_re = dataclasses.replace(rhs_e, argmap=_cheb, normalization="ratio", text="p_n(2x^2-1;a^2,b^2,-1,-q|q^2)")
    rhs_ro = dataclasses.replace(rhs_o, argmap=_cheb, normalization="ratio", text="p_n(2x^2-1;a^2,b^2,-q,-q^2|q^2)")
    recs += [
        IdentityRecord(
            "AW-norm-even",
            "p_{2n}(x;a,b,-a,-b|q)/p_{2n}((a+1/a)/2) = p_n(2x^2-1;a^2,b^2,-1,-q|q^2)/p_n((a^2+a^-2)/2)",
            lhs_re, rhs_re, mode="ratio", anchor=anchor, defaults=defaults, perturb_key="a",
        ),
        IdentityRecord(
            "AW-norm-odd",
            "p_{2n+1}(x;a,b,-a,-b|q)/p_{2n+1}((a+1/a)/2) = 2x p_n(2x^2-1;a^2,b^2,-q,-q^2|q^2)/((a+1/a) p_n((a^2+a^-2)/2))",
            lhs_ro, rhs_ro, prefactor=lambda P, n: X * 2, prefactor_text="2x", mode="ratio", anchor=anchor,
            defaults=defaults, perturb_key="a", parity="odd",
        ),
    ]
    # specializations b = 0 and a = b = 0 (monic form)
    for suffix, fixed, label in (("b0", {"b": F(0)}, "b=0"), ("ab0", {"a": F(0), "b": F(0)}, "a=b=0")):
        dflt = tuple({**d, **fixed} for d in defaults[::2])
        for base in recs[:2]:
            recs.append(
                dataclasses.replace(
                    base,
                    id=f"{base.id}-{suffix}",
                    ref=f"{base.ref}  [{label}]",
                    defaults=dflt,
                    alias_of=base.id,
                    perturb_key="d" if suffix == "ab0" else "a",
                )
            )
    return recs


def _aw_reparam_record():
    defaults = []
    for p in (F(1, 2), F(1, 3)):
        for a, b in ((F(1, 2), F(1, 3)), (F(2, 5), F(-1, 5))):
            defaults.append({"p": p, "q": p * p, "a": a, "b": b})
    lhs = Side(
        "askey_wilson",
        lambda P: {"a": P["a"], "b": P["b"], "c": P["p"], "d": -P["p"]},
        _same, q=_q, normalization="monic", text="P_n(z;a,b,q^1/2,-q^1/2|q)",
    )
    rhs = Side(
        "askey_wilson",
        lambda P: {"a": P["a"], "b": P["q"] * P["a"], "c": P["b"], "d": P["q"] * P["b"]},
        _same, q=_q2, normalization="monic", text="P_n(z;a,qa,b,qb|q^2)",
    )
    return [
        IdentityRecord(
            "AW-reparam", "P_n(z;a,b,q^1/2,-q^1/2|q) = P_n(z;a,qa,b,qb|q^2)", lhs, rhs,
            form="z", variable="z", defaults=tuple(defaults), perturb_key="b", parity="all",
        )
    ]


def _bigq_records():
    defaults = tuple({"q": q, "a": a} for q in (F(1, 4), F(1, 2)) for a in (F(1, 3), F(2, 5)))
    lhs = lambda deg: Side(
        "big_q_jacobi", lambda P: {"a": P["a"], "b": P["a"], "c": F(1), "d": F(1)}, deg, q=_q,
        text=f"P_{{{'2n' if deg is _dbl else '2n+1'}}}(x;a,a,1,1;q)",
    )
    rhs_e = Side("little_q_jacobi", lambda P: {"a": 1 / P["q"], "b": P["a"] ** 2}, _same, q=_q2, argmap=_sq,
                 text="p_n(x^2;q^-1,a^2;q^2)")
    rhs_o = Side("little_q_jacobi", lambda P: {"a": P["q"], "b": P["a"] ** 2}, _same, q=_q2, argmap=_sq,
                 text="p_n(x^2;q,a^2;q^2)")

    def pref_e(P, n):
        pn = make_polynomial(rhs_e.spec(P), n)
        return ONE / pn((P["q"] * P["a"]) ** -2)

    def pref_o(P, n):
        pn = make_polynomial(rhs_o.spec(P), n)
        return X * (P["q"] * P["a"] / pn((P["q"] * P["a"]) ** -2))

    return [
        IdentityRecord("bigqJ-littleqJ-even", "P_{2n}(x;a,a,1,1;q) = p_n(x^2;q^-1,a^2;q^2)/p_n((qa)^-2;q^-1,a^2;q^2)",
                       lhs(_dbl), rhs_e, prefactor=pref_e, prefactor_text="1/p_n((qa)^-2;q^-1,a^2;q^2)",
                       defaults=defaults, perturb_key="b"),
        IdentityRecord("bigqJ-littleqJ-odd", "P_{2n+1}(x;a,a,1,1;q) = qa x p_n(x^2;q,a^2;q^2)/p_n((qa)^-2;q,a^2;q^2)",
                       lhs(_dbl1), rhs_o, prefactor=pref_o, prefactor_text="qa x/p_n((qa)^-2;q,a^2;q^2)",
                       defaults=defaults, perturb_key="b", parity="odd"),
    ]


def _dqh_records():
    defaults = tuple({"q": q} for q in (F(1, 4), F(1, 2), F(2, 3)))
    lhs_e = Side("discrete_q_hermite_I", _const({}), _dbl, q=_q, text="h_{2n}(x;q)")
    lhs_o = Side("discrete_q_hermite_I", _const({}), _dbl1, q=_q, text="h_{2n+1}(x;q)")
    rhs_e = Side("wall", lambda P: {"a": 1 / P["q"]}, _same, q=_q2, argmap=_sq, text="p_n(x^2;q^-1;q^2)")
    rhs_o = Side("wall", lambda P: {"a": P["q"]}, _same, q=_q2, argmap=_sq, text="p_n(x^2;q;q^2)")

    def c(P, n, start):
        q = P["q"]
        return (-1) ** n * q ** (n * (n - 1)) * q_pochhammer(start, q * q, n)

    return [
        IdentityRecord("dqH-Wall-even", "h_{2n}(x;q) = (-1)^n q^(n(n-1)) (q;q^2)_n p_n(x^2;q^-1;q^2)", lhs_e, rhs_e,
                       prefactor=lambda P, n: ONE * c(P, n, P["q"]), prefactor_text="(-1)^n q^(n(n-1)) (q;q^2)_n",
                       defaults=defaults, perturb_key="a"),
        IdentityRecord("dqH-Wall-odd", "h_{2n+1}(x;q) = (-1)^n q^(n(n-1)) (q^3;q^2)_n x p_n(x^2;q;q^2)", lhs_o, rhs_o,
                       prefactor=lambda P, n: X * c(P, n, P["q"] ** 3), prefactor_text="(-1)^n q^(n(n-1)) (q^3;q^2)_n x",
                       defaults=defaults, perturb_key="a", parity="odd"),
    ]


def _qracah_records():
    defaults = tuple({"q": F(2, 3), "alpha": F(1, 2), "N": N} for N in (F(3, 2), F(2), F(5, 2)))

    def M(P):
        return int(2 * P["N"] + 1)

    lhs = lambda deg: Side(
        "q_racah",
        lambda P: {"alpha": P["alpha"], "beta": P["alpha"], "gamma": P["q"] ** (-M(P) - 1), "delta": F(-1)},
        deg, q=_q, text=f"R_{{{'2n' if deg is _dbl else '2n+1'}}}(y;alpha,alpha,q^(-2N-2),-1|q)",
    )
    Y = lambda P: Polynomial1([2 * P["q"] ** (-M(P)), 0, 1])
    rhs = lambda beta_fn, txt: Side(
        "q_racah",
        lambda P: {"alpha": P["alpha"] ** 2, "beta": beta_fn(P), "gamma": P["q"] ** (-M(P) - 1), "delta": P["q"] ** (-M(P) - 1)},
        _same, q=_q2, argmap=Y, text=txt,
    )
    rhs_e = rhs(lambda P: 1 / P["q"], "R_n(Y;alpha^2,q^-1,q^(-2N-2),q^(-2N-2)|q^2), Y=y^2+2q^(-2N-1)")
    rhs_o = rhs(lambda P: P["q"], "R_n(Y;alpha^2,q,q^(-2N-2),q^(-2N-2)|q^2), Y=y^2+2q^(-2N-1)")
    recs = [
        IdentityRecord(
            "qRacah-even", "R_{2n}(q^(-x-N-1/2)-q^(x-N-1/2);a,a,q^(-2N-2),-1|q) = R_n(q^(-2x-2N-1)+q^(2x-2N-1);a^2,q^-1,q^(-2N-2),q^(-2N-2)|q^2)",
            lhs(_dbl), rhs_e, n_range=lambda P: int(P["N"] + HALF), defaults=defaults, perturb_key="alpha", variable="y",
        ),
        IdentityRecord(
            "qRacah-odd", "R_{2n+1}(y;a,a,q^(-2N-2),-1|q) = y/(1-q^(-2N-1)) R_n(Y;a^2,q,q^(-2N-2),q^(-2N-2)|q^2)",
            lhs(_dbl1), rhs_o, prefactor=lambda P, n: X / (1 - P["q"] ** (-M(P))),
            prefactor_text="y/(1-q^(-2N-1))", n_range=lambda P: int(P["N"]), defaults=defaults,
            perturb_key="alpha", parity="odd", variable="y",
        ),
    ]
    for base in list(recs):
        recs.append(
            dataclasses.replace(
                base, id=f"{base.id}-alpha0", ref=base.ref + "  [alpha=0]",
                defaults=tuple({**d, "alpha": F(0)} for d in defaults), alias_of=base.id, perturb_key="gamma",
            )
        )
    return recs


def _nonstandard_records():
    defaults = tuple({"q": F(1, 2), "N": N, "gamma": F(2) ** N * F(3, 2)} for N in (3, 4))

    def lhs_params(P):
        N = P["N"]
        return {"alpha": P["q"] ** (-N - 1), "beta": P["q"] ** (-N - 1), "gamma": P["gamma"], "delta": F(-1)}

    lhs = lambda deg, txt: Side("q_racah", lhs_params, deg, q=_q, text=txt)
    Y = lambda P: Polynomial1([2 * P["gamma"] * P["q"], 0, 1])
    rhs = lambda beta_fn, txt: Side(
        "q_racah",
        lambda P: {"alpha": P["q"] ** (-2 * P["N"] - 2), "beta": beta_fn(P), "gamma": P["gamma"], "delta": P["gamma"]},
        _same, q=_q2, argmap=Y, text=txt,
    )
    grid = lambda P: [P["q"] ** (-x) - P["gamma"] * P["q"] ** (x + 1) for x in range(int(P["N"]) + 1)]
    return [
        IdentityRecord(
            "qRacah-nonstandard-even",
            "R_n(q^-2x+g^2 q^(2x+2);q^(-2N-2),q^-1,g,g|q^2) = R_{2n}(q^-x-g q^(x+1);q^(-N-1),q^(-N-1),g,-1|q) (2n<=N), R_{2N-2n+1}(...) (2n>N, x=0..N)",
            lhs(_dbl, "R_{2n}(y;q^(-N-1),q^(-N-1),gamma,-1|q)"),
            rhs(lambda P: 1 / P["q"], "R_n(y^2+2 gamma q;q^(-2N-2),q^-1,gamma,gamma|q^2)"),
            n_range=lambda P: int(P["N"]), validity=lambda P, n: 2 * n <= P["N"], validity_text="2n <= N",
            check_level="gridpoints", grid=grid, grid_lhs_degree=lambda P, n: 2 * int(P["N"]) - 2 * n + 1,
            defaults=defaults, perturb_key="beta", variable="y",
        ),
        IdentityRecord(
            "qRacah-nonstandard-odd",
            "(q^-x-g q^(x+1))/(1-g q) R_n(q^-2x+g^2 q^(2x+2);q^(-2N-2),q,g,g|q^2) = R_{2n+1}(...) (2n+1<=N), R_{2N-2n}(...) (2n+1>N, x=0..N)",
            lhs(_dbl1, "R_{2n+1}(y;q^(-N-1),q^(-N-1),gamma,-1|q)"),
            rhs(lambda P: P["q"], "R_n(y^2+2 gamma q;q^(-2N-2),q,gamma,gamma|q^2)"),
            prefactor=lambda P, n: X / (1 - P["gamma"] * P["q"]), prefactor_text="y/(1-gamma q)",
            n_range=lambda P: int(P["N"]), validity=lambda P, n: 2 * n + 1 <= P["N"], validity_text="2n+1 <= N",
            check_level="gridpoints", grid=grid, grid_lhs_degree=lambda P, n: 2 * int(P["N"]) - 2 * n,
            defaults=defaults, perturb_key="beta", parity="odd", variable="y",
        ),
    ]


def _chahn_records():
    defaults = (
        {"a": F(1, 2), "b": F(1, 3)},
        {"a": F(1), "b": F(2, 5)},
        {"a": GaussRat(F(1, 2), F(1, 2)), "b": GaussRat(F(1, 2), F(-1, 2))},
    )
    lhs = lambda deg: Side("continuous_hahn", lambda P: {"a": P["a"], "b": P["b"], "c": P["a"], "d": P["b"]}, deg,
                           text="p_{2n}(x;a,b,a,b)" if deg is _dbl else "p_{2n+1}(x;a,b,a,b)")
    rhs = lambda d, txt: Side("wilson", lambda P: {"a": P["a"], "b": P["b"], "c": HALF, "d": F(d)}, _same, argmap=_sq, text=txt)
    anchor = lambda P: I * P["a"]
    return [
        IdentityRecord("cHahn-Wilson-even", "p_{2n}(x;a,b,a,b)/p_{2n}(ia) = W_n(x^2;a,b,1/2,0)/W_n(-a^2;a,b,1/2,0)",
                       lhs(_dbl), rhs(0, "W_n(x^2;a,b,1/2,0)"), mode="ratio", anchor=anchor, defaults=defaults, perturb_key="c"),
        IdentityRecord("cHahn-Wilson-odd", "p_{2n+1}(x;a,b,a,b)/p_{2n+1}(ia) = x W_n(x^2;a,b,1/2,1)/(ia W_n(-a^2;a,b,1/2,1))",
                       lhs(_dbl1), rhs(1, "W_n(x^2;a,b,1/2,1)"), prefactor=_x_pref, prefactor_text="x", mode="ratio",
                       anchor=anchor, defaults=defaults, perturb_key="c", parity="odd"),
    ]


def _mp_records():
    defaults = tuple({"a": a} for a in (F(1, 2), F(1), F(7, 3)))
    lhs = lambda deg: Side("meixner_pollaczek", lambda P: {"lam": P["a"], "phase": I}, deg,
                           text="P_{2n}^(a)(x;pi/2)" if deg is _dbl else "P_{2n+1}^(a)(x;pi/2)")
    rhs = lambda c, txt: Side("continuous_dual_hahn", lambda P: {"a": P["a"], "b": HALF, "c": F(c)}, _same, argmap=_sq, text=txt)
    anchor = lambda P: I * P["a"]
    return [
        IdentityRecord("MP-cdHahn-even", "P_{2n}^(a)(x;pi/2)/P_{2n}^(a)(ia;pi/2) = S_n(x^2;a,1/2,0)/S_n(-a^2;a,1/2,0)",
                       lhs(_dbl), rhs(0, "S_n(x^2;a,1/2,0)"), mode="ratio", anchor=anchor, defaults=defaults, perturb_key="b"),
        IdentityRecord("MP-cdHahn-odd", "P_{2n+1}^(a)(x;pi/2)/P_{2n+1}^(a)(ia;pi/2) = x S_n(x^2;a,1/2,1)/(ia S_n(-a^2;a,1/2,1))",
                       lhs(_dbl1), rhs(1, "S_n(x^2;a,1/2,1)"), prefactor=_x_pref, prefactor_text="x", mode="ratio",
                       anchor=anchor, defaults=defaults, perturb_key="b", parity="odd"),
    ]


def _hahn_records():
    defaults = tuple({"alpha": a, "N": N} for a, N in ((F(1, 3), F(1, 2)), (F(2), F(3, 2)), (F(1, 2), F(2))))
    shift = lambda P: Polynomial1([P["N"] + HALF, 1])
    lam = lambda P: Polynomial1([-((P["N"] + HALF) ** 2), 0, 1])
    lhs = lambda deg: Side("hahn", lambda P: {"alpha": P["alpha"], "beta": P["alpha"], "N": int(2 * P["N"] + 1)}, deg,
                           argmap=shift, text="Q_{2n}(x+N+1/2;a,a,2N+1)" if deg is _dbl else "Q_{2n+1}(x+N+1/2;a,a,2N+1)")
    rhs_e = Side("racah", lambda P: {"alpha": P["alpha"], "beta": -HALF, "gamma": -P["N"] - 1, "delta": -P["N"] - 1},
                 _same, argmap=lam, text="R_n(x^2-(N+1/2)^2;a,-1/2,-N-1,-N-1)")
    # first Racah parameter is alpha (alpha + 1 fails from n = 1 on)
    rhs_o = Side("racah", lambda P: {"alpha": P["alpha"], "beta": HALF, "gamma": -P["N"] - 1, "delta": -P["N"] - 1},
                 _same, argmap=lam, text="R_n(x^2-(N+1/2)^2;a,1/2,-N-1,-N-1)")
    return [
        IdentityRecord("Hahn-Racah-even", "Q_{2n}(x+N+1/2;a,a,2N+1) = R_n(x^2-(N+1/2)^2;a,-1/2,-N-1,-N-1)",
                       lhs(_dbl), rhs_e, n_range=lambda P: int(P["N"] + HALF), defaults=defaults, perturb_key="alpha"),
        IdentityRecord("Hahn-Racah-odd", "Q_{2n+1}(x+N+1/2;a,a,2N+1) = -2x/(2N+1) R_n(x^2-(N+1/2)^2;a,1/2,-N-1,-N-1)",
                       lhs(_dbl1), rhs_o, prefactor=lambda P, n: X * (-2 / (2 * P["N"] + 1)), prefactor_text="-2x/(2N+1)",
                       n_range=lambda P: int(P["N"]), defaults=defaults, perturb_key="alpha", parity="odd"),
    ]


def _krawtchouk_records():
    defaults = tuple({"N": N} for N in (1, 2, 3))
    K = lambda deg, shift, tot, txt: Side(
        "krawtchouk", lambda P: {"p": HALF, "N": tot(P)}, deg, argmap=lambda P: Polynomial1([shift(P), 1]), text=txt
    )
    two_n = lambda P: 2 * P["N"]
    two_n1 = lambda P: 2 * P["N"] + 1
    dh = lambda g, d, Nf, arg, txt: Side("dual_hahn", lambda P: {"gamma": F(g), "delta": F(d), "N": Nf(P)}, _same, argmap=arg, text=txt)
    sq_m1 = lambda P: Polynomial1([-1, 0, 1])
    xx1 = lambda P: Polynomial1([0, 1, 1])
    N_ = lambda P: P["N"]
    N_1 = lambda P: P["N"] - 1
    return [
        IdentityRecord(
            "Krawtchouk-dualHahn-even-2N", "K_{2m}(x+N;1/2,2N) = (1/2)_m/(-N+1/2)_m R_m(x^2;-1/2,-1/2,N)",
            K(_dbl, N_, two_n, "K_{2m}(x+N;1/2,2N)"), dh(-HALF, -HALF, N_, _sq, "R_m(x^2;-1/2,-1/2,N)"),
            prefactor=lambda P, m: ONE * (pochhammer(HALF, m) / pochhammer(-P["N"] + HALF, m)),
            prefactor_text="(1/2)_m/(-N+1/2)_m", n_range=N_, defaults=defaults, perturb_key="gamma",
        ),
        IdentityRecord(
            "Krawtchouk-dualHahn-odd-2N", "K_{2m+1}(x+N;1/2,2N) = -(3/2)_m/(N (-N+1/2)_m) x R_m(x^2-1;1/2,1/2,N-1)",
            K(_dbl1, N_, two_n, "K_{2m+1}(x+N;1/2,2N)"), dh(HALF, HALF, N_1, sq_m1, "R_m(x^2-1;1/2,1/2,N-1)"),
            prefactor=lambda P, m: X * (-pochhammer(F(3, 2), m) / (P["N"] * pochhammer(-P["N"] + HALF, m))),
            prefactor_text="-(3/2)_m/(N (-N+1/2)_m) x", n_range=N_1, defaults=defaults, perturb_key="gamma", parity="odd",
        ),
        IdentityRecord(
            "Krawtchouk-dualHahn-even-2N1", "K_{2m}(x+N+1;1/2,2N+1) = (1/2)_m/(-N-1/2)_m R_m(x(x+1);-1/2,1/2,N)",
            K(_dbl, lambda P: P["N"] + 1, two_n1, "K_{2m}(x+N+1;1/2,2N+1)"), dh(-HALF, HALF, N_, xx1, "R_m(x(x+1);-1/2,1/2,N)"),
            prefactor=lambda P, m: ONE * (pochhammer(HALF, m) / pochhammer(-P["N"] - HALF, m)),
            prefactor_text="(1/2)_m/(-N-1/2)_m", n_range=N_, defaults=defaults, perturb_key="gamma",
        ),
        IdentityRecord(
            "Krawtchouk-dualHahn-odd-2N1", "K_{2m+1}(x+N+1;1/2,2N+1) = (3/2)_m/(-N-1/2)_{m+1} (x+1/2) R_m(x(x+1);1/2,-1/2,N)",
            K(_dbl1, lambda P: P["N"] + 1, two_n1, "K_{2m+1}(x+N+1;1/2,2N+1)"), dh(HALF, -HALF, N_, xx1, "R_m(x(x+1);1/2,-1/2,N)"),
            prefactor=lambda P, m: Polynomial1([HALF, 1]) * (pochhammer(F(3, 2), m) / pochhammer(-P["N"] - HALF, m + 1)),
            prefactor_text="(3/2)_m/(-N-1/2)_{m+1} (x+1/2)", n_range=N_, defaults=defaults, perturb_key="gamma", parity="odd",
        ),
    ]


_CATALOG = None


def catalog():
    """All identity records, in a stable order."""
    global _CATALOG
    if _CATALOG is None:
        recs = []
        for build in (
            _jacobi_records, _hl_records, _aw_records, _aw_reparam_record, _bigq_records, _dqh_records,
            _qracah_records, _nonstandard_records, _chahn_records, _mp_records, _hahn_records, _krawtchouk_records,
        ):
            recs.extend(build())
        _CATALOG = tuple(recs)
    return list(_CATALOG)


def lookup(record_id: str) -> IdentityRecord:
    for r in catalog():
        if r.id == record_id:
            return r
    raise UnknownId(record_id)


# ---------------------------------------------------------------------------
# verification


def _coeffs(p):
    return list(p.coeffs)


def _first_diff(a, b):
    ca, cb = _coeffs(a), _coeffs(b)
    for i in range(max(len(ca), len(cb))):
        u = ca[i] if i < len(ca) else 0
        v = cb[i] if i < len(cb) else 0
        if u != v:
            return i, u, v
    return None


def _ell(record, p, P):
    x0 = record.anchor(P)
    if record.anchor_kind == "derivative":
        if isinstance(p, SymLaurent1):
            p = p.to_x_poly()
        return p.derivative()(x0)
    return p(x0)


def _fmt(v):
    return str(simplify(v)) if not isinstance(v, (mpmath.mpf, mpmath.mpc)) else mpmath.nstr(v, 20)


def _fail(record, P, n, level, detail, lhs=None, rhs=None):
    witness = {"record": record.id, "n": n, "level": level, "params": {k: _fmt(v) for k, v in P.items()}}
    witness.update(detail)
    if lhs is not None:
        witness["lhs_coeffs"] = [_fmt(c) for c in _coeffs(lhs)]
        witness["rhs_coeffs"] = [_fmt(c) for c in _coeffs(rhs)]
    raise IdentityFailure(f"{record.id} fails at n={n} ({level})", witness)


def admissible_n(record, P, n_max=None):
    bounds = []
    if record.n_range is not None:
        bounds.append(record.n_range(P))
    if n_max is not None:
        bounds.append(n_max)
    if not bounds:
        raise ValueError(f"{record.id} needs an explicit n_max")
    return min(bounds)


def sides(record, P, n, normalization=None):
    """``(LHS, prefactor * RHS o phi)`` as polynomials in the record's variable."""
    form = record.form
    L = record.lhs.poly(P, record.lhs.degree(n), normalization, form)
    R = record.prefactor_poly(P, n) * record.rhs.poly(P, record.rhs.degree(n), normalization, form)
    return L, R


def _compare_poly(record, P, n, L, R):
    if record.mode == "ratio":
        lL, lR = _ell(record, L, P), _ell(record, R, P)
        if lL == 0:
            raise AnchorVanishes(f"{record.id}: anchor value vanishes at n={n}")
        if lR == 0:
            _fail(record, P, n, "anchor", {"lhs_anchor": _fmt(lL), "rhs_anchor": _fmt(lR)}, L, R)
        a, b = L * lR, R * lL
    else:
        a, b = L, R
    if a != b:
        i, u, v = _first_diff(a, b)
        _fail(record, P, n, "polynomial", {"coefficient": i, "lhs_value": _fmt(u), "rhs_value": _fmt(v)}, a, b)


def _compare_grid(record, P, n):
    ld = record.grid_lhs_degree(P, n)
    L = record.lhs.poly(P, ld)
    R = record.prefactor_poly(P, n) * record.rhs.poly(P, record.rhs.degree(n))
    for j, y in enumerate(record.grid(P)):
        u, v = L(y), R(y)
        if u != v:
            _fail(record, P, n, "gridpoints", {"lhs_degree": ld, "node": j, "point": _fmt(y), "lhs_value": _fmt(u), "rhs_value": _fmt(v)})
    return ld


def verify_identity(record, params=None, n_max=None, mode="exact", check_level="auto", normalization=None):
    """Verify ``record`` at concrete parameters for ``n = 0..n_max``.

    ``check_level``: ``"polynomial"`` insists on the polynomial-level claim and
    raises ValidityViolated outside its range; ``"gridpoints"`` always compares
    on the lattice; ``"auto"`` uses polynomials where valid and falls back to the
    lattice where the record allows it.
    """
    if isinstance(record, str):
        record = lookup(record)
    if mode != "exact":
        raise ValueError("only exact verification is supported")
    P = dict(params) if params is not None else dict(record.defaults[0])
    top = admissible_n(record, P, n_max)
    checked = []
    for n in range(top + 1):
        ok = record.validity is None or record.validity(P, n)
        if check_level == "gridpoints" and record.grid is not None:
            ld = _compare_grid(record, P, n) if not ok else record.lhs.degree(n)
            if ok:
                L, R = sides(record, P, n, normalization)
                for y in record.grid(P):
                    if L(y) != R(y):
                        _fail(record, P, n, "gridpoints", {"point": _fmt(y), "lhs_value": _fmt(L(y)), "rhs_value": _fmt(R(y))})
            checked.append({"n": n, "level": "gridpoints", "lhs_degree": ld})
            continue
        if not ok:
            if check_level == "polynomial" or record.grid is None:
                raise ValidityViolated(f"{record.id}: polynomial-level identity needs {record.validity_text} (n={n})")
            ld = _compare_grid(record, P, n)
            checked.append({"n": n, "level": "gridpoints", "lhs_degree": ld})
            continue
        L, R = sides(record, P, n, normalization)
        _compare_poly(record, P, n, L, R)
        checked.append({"n": n, "level": "polynomial", "lhs_degree": record.lhs.degree(n)})
    return {"record": record.id, "status": "pass", "params": {k: _fmt(v) for k, v in P.items()}, "checked": checked}


# ---------------------------------------------------------------------------
# mutations (used to show the verifier is not vacuous)


def drop_prefactor(record):
    return dataclasses.replace(record, id=record.id + "~noprefactor", prefactor=None, prefactor_text="1")


def perturb_parameter_map(record, key=None, delta=F(1, 7)):
    key = key or record.perturb_key
    orig = record.rhs.params

    def params(P):
        d = dict(orig(P))
        if key not in d:
            raise KeyError(f"{record.id}: right-hand side has no parameter {key!r}")
        d[key] = d[key] + delta
        return d

    return dataclasses.replace(record, id=record.id + f"~{key}+{delta}", rhs=dataclasses.replace(record.rhs, params=params))


def perturb_argmap(record, delta=F(1, 7)):
    """Shift the argument map by a constant."""
    rhs = record.rhs
    if rhs.argmap is None or rhs.argmap == "z^2":
        raise ValueError(f"{record.id} has no polynomial argument map")
    orig = rhs.argmap
    return dataclasses.replace(record, id=record.id + "~argmap", rhs=dataclasses.replace(rhs, argmap=lambda P: orig(P) + delta))


# ---------------------------------------------------------------------------
# terminating (q-)hypergeometric identities


def _qhyp_even(a, b, c, d, q):
    """Quadratic 4phi3 transformation, even case."""
    lhs = qhyp_terminating([a * a, q * b * b, c, -d], [q * a * b, -q * a * b, c * d], q, q)
    Q = q * q
    rhs = qhyp_terminating([a * a, q * b * b, c * c, d * d], [Q * a * a * b * b, c * d, q * c * d], Q, Q)
    return lhs, rhs


def _qhyp_odd(a, b, c, d, q):
    lhs = qhyp_terminating([a * a, q * b * b, c, -d], [q * a * b, -q * a * b, c * d], q, q)
    Q = q * q
    rhs = (c - d) / (1 - c * d) * qhyp_terminating(
        [q * a * a, Q * b * b, c * c, d * d], [Q * a * a * b * b, Q * c * d, q * c * d], Q, Q
    )
    return lhs, rhs


def _nonstd_even(n, N, u, gamma, q):
    """``u = q^-x``; the right side depends on x only through ``q^-2x`` and ``q^2x``."""
    Q = q * q
    lhs = qhyp_terminating([q ** (-2 * n), q ** (-2 * (N - n) - 1), u, -gamma * q / u], [q ** (-N), -(q ** (-N)), gamma * q], q, q)
    rhs = qhyp_terminating(
        [q ** (-2 * n), q ** (2 * n - 2 * N - 1), u * u, gamma * gamma * Q / (u * u)], [q ** (-2 * N), gamma * q, gamma * Q], Q, Q
    )
    return lhs, rhs


def _nonstd_odd(n, N, u, gamma, q):
    Q = q * q
    lhs = qhyp_terminating([q ** (-2 * n - 1), q ** (-2 * (N - n)), u, -gamma * q / u], [q ** (-N), -(q ** (-N)), gamma * q], q, q)
    rhs = (u - gamma * q / u) / (1 - gamma * q) * qhyp_terminating(
        [q ** (-2 * n), q ** (2 * n - 2 * N + 1), u * u, gamma * gamma * Q / (u * u)], [q ** (-2 * N), gamma * Q, gamma * q**3], Q, Q
    )
    return lhs, rhs


def _hyp_even(a, b, c, d):
    lhs = hyp_terminating([2 * a, 2 * b + 1, c], [a + b + 1, c + d], 1)
    rhs = hyp_terminating([a, b + HALF, c, d], [a + b + 1, (c + d) / 2, (c + d + 1) / 2], 1)
    return lhs, rhs


def _hyp_odd(a, b, c, d):
    lhs = hyp_terminating([2 * a, 2 * b + 1, c], [a + b + 1, c + d], 1)
    rhs = (d - c) / (d + c) * hyp_terminating([a + HALF, b + 1, c, d], [a + b + 1, (c + d) / 2 + 1, (c + d + 1) / 2], 1)
    return lhs, rhs


QHYP_IDENTITIES = {
    "qhyp-quadratic-even": ("4phi3(a^2,qb^2,c,-d;qab,-qab,cd;q,q) = 4phi3(a^2,qb^2,c^2,d^2;q^2a^2b^2,cd,qcd;q^2,q^2)", ("a", "b", "c", "d", "q")),
    "qhyp-quadratic-odd": ("4phi3(a^2,qb^2,c,-d;qab,-qab,cd;q,q) = (c-d)/(1-cd) 4phi3(qa^2,q^2b^2,c^2,d^2;q^2a^2b^2,q^2cd,qcd;q^2,q^2)", ("a", "b", "c", "d", "q")),
    "qhyp-nonstandard-even": ("4phi3(q^-2n,q^(-2(N-n)-1),q^-x,-g q^(x+1);q^-N,-q^-N,g q;q,q) = 4phi3(q^-2n,q^(2n-2N-1),q^-2x,g^2 q^(2x+2);q^-2N,g q,g q^2;q^2,q^2)", ("n", "N", "u", "gamma", "q")),
    "qhyp-nonstandard-odd": ("4phi3(q^(-2n-1),q^(-2(N-n)),q^-x,-g q^(x+1);q^-N,-q^-N,g q;q,q) = (q^-x-g q^(x+1))/(1-g q) 4phi3(q^-2n,q^(2n-2N+1),q^-2x,g^2 q^(2x+2);q^-2N,g q^2,g q^3;q^2,q^2)", ("n", "N", "u", "gamma", "q")),
    "hyp-quadratic-even": ("3F2(2a,2b+1,c;a+b+1,c+d;1) = 4F3(a,b+1/2,c,d;a+b+1,(c+d)/2,(c+d+1)/2;1)", ("a", "b", "c", "d")),
    "hyp-quadratic-odd": ("3F2(2a,2b+1,c;a+b+1,c+d;1) = (d-c)/(d+c) 4F3(a+1/2,b+1,c,d;a+b+1,(c+d)/2+1,(c+d+1)/2;1)", ("a", "b", "c", "d")),
}

_QHYP_FUNCS = {
    "qhyp-quadratic-even": _qhyp_even,
    "qhyp-quadratic-odd": _qhyp_odd,
    "qhyp-nonstandard-even": _nonstd_even,
    "qhyp-nonstandard-odd": _nonstd_odd,
    "hyp-quadratic-even": _hyp_even,
    "hyp-quadratic-odd": _hyp_odd,
}


def _q_exponent(u, q):
    """Integer x with ``u == q**-x`` and x >= 0, else None."""
    x, val = 0, Fraction(1)
    while val <= abs(u) and x < 10_000:
        if val == u:
            return x
        val /= q
        x += 1
    return None


def verify_qhyp_identity(which: str, instantiation: dict) -> bool:
    """Evaluate both sides of a terminating (q-)hypergeometric identity exactly.

    For the nonstandard pair, ``u`` stands for ``q^-x``.  When 2n > N (even) or
    2n+1 > N (odd) only lattice values ``u = q^-x``, x = 0..N, are allowed.
    """
    if which not in _QHYP_FUNCS:
        raise UnknownId(which)
    names = QHYP_IDENTITIES[which][1]
    args = [instantiation[k] for k in names]
    if which.startswith("qhyp-nonstandard"):
        n, N, u, gamma, q = args
        bad = 2 * n > N if which.endswith("even") else 2 * n + 1 > N
        if bad:
            x = _q_exponent(u, q)
            if x is None or x > N:
                raise ValidityViolated(f"{which}: n={n}, N={N} only valid for u = q^-x with x in 0..{N}")
    lhs, rhs = _QHYP_FUNCS[which](*args)
    if lhs != rhs:
        raise IdentityFailure(f"{which} fails", {"which": which, "lhs": _fmt(lhs), "rhs": _fmt(rhs), **{k: _fmt(v) for k, v in instantiation.items()}})
    return True


def _generic(v, q):
    """True when v cannot cause an accidental extra termination or pole."""
    if q is None:
        return (2 * v).denominator != 1 and (4 * v).denominator != 1
    for cand in (v, -v, v * v, q * v * v, q * q * v * v, q * v, -q * v):
        if cand != 0 and _q_exponent(cand, q) is not None or _q_exponent(1 / cand, q) is not None:
            return False
    return True


def random_qhyp_instance(which: str, rng: random.Random):
    """A random terminating instantiation with small rational parameters.

    Only the designated parameter terminates the series; the others are drawn
    generic so that no side terminates early by accident.
    """
    q_ctx = [None]

    def r():
        while True:
            num = rng.choice([1, 2, 3, 4, 5, 7])
            den = rng.choice([2, 3, 5, 7, 9, 11])
            v = F(rng.choice([-1, 1]) * num, den)
            if _generic(v, q_ctx[0]):
                return v

    if which.startswith("qhyp-quadratic"):
        p = rng.choice([F(1, 2), F(1, 3), F(2, 3), F(2, 5)])
        q = p * p
        q_ctx[0] = q
        n = rng.randint(0, 4)
        a, b, c, d = r(), r(), r(), r()
        regimes = ["a", "c", "d"] + (["a-half"] if which.endswith("odd") else [])
        reg = rng.choice(regimes)
        if reg == "a":
            a = q ** (-n) if which.endswith("even") else a
            if which.endswith("odd"):
                c = q ** (-n)
        elif reg == "c":
            c = q ** (-n)
        elif reg == "d":
            d = -(q ** (-n))
        else:
            a = p ** (-(2 * n + 1))
        return {"a": a, "b": b, "c": c, "d": d, "q": q}
    if which.startswith("qhyp-nonstandard"):
        q = rng.choice([F(1, 2), F(1, 3), F(2, 3)])
        q_ctx[0] = q
        N = rng.randint(1, 5)
        n = rng.randint(0, N)
        gamma = r()
        bad = 2 * n > N if which.endswith("even") else 2 * n + 1 > N
        if bad or rng.random() < 0.3:
            u = q ** (-rng.randint(0, N))
        else:
            u = r()
        return {"n": n, "N": N, "u": u, "gamma": gamma, "q": q}
    n = rng.randint(0, 5)
    a, b, c, d = r(), r(), r(), r()
    if which.endswith("even"):
        reg = rng.choice(["a", "c", "b"])
        if reg == "a":
            a = F(-n)
        elif reg == "c":
            c = F(-n)
        else:
            b = F(-n) - HALF
    else:
        reg = rng.choice(["c", "a", "b"])
        if reg == "c":
            c = F(-n)
        elif reg == "a":
            a = F(-n) - HALF
        else:
            b = F(-n - 1)
    return {"a": a, "b": b, "c": c, "d": d}


def run_qhyp_random(which: str, count: int = 50, seed: int = 0):
    """Verify ``count`` random terminating instances; resample on lower-parameter poles."""
    rng = random.Random(f"{which}:{seed}")
    done = 0
    attempts = 0
    while done < count:
        attempts += 1
        if attempts > 50 * count:
            raise RuntimeError(f"{which}: too many degenerate samples")
        inst = random_qhyp_instance(which, rng)
        try:
            verify_qhyp_identity(which, inst)
        except (LowerParameterPole, ZeroDivisionError, NonTerminating):
            continue
        done += 1
    return {"which": which, "status": "pass", "count": done, "attempts": attempts}


# ---------------------------------------------------------------------------
# weight factorizations


def _aw_delta(z, params, q, K):
    """``Delta(z) = Delta_+(z) Delta_+(1/z)`` truncated at K factors, with relative bound."""
    qm = to_mp(q)
    bound = mpmath.mpf(0)
    val = mpmath.mpf(1)
    for w in (z, 1 / z):
        num, b0 = _qprod(w * w, qm, K)
        val *= num
        bound += b0
        for a in params:
            den, b1 = _qprod(to_mp(a) * w, qm, K)
            val /= den
            bound += b1
    return val, bound


def _qprod(a, q, K):
    val = mpmath.mpf(1)
    qk = mpmath.mpf(1)
    for _ in range(K):
        val *= 1 - a * qk
        qk *= q
    return val, 2 * abs(a) * abs(q) ** K / (1 - abs(q))


def default_sample_points(count=16):
    """``exp(i pi (2j+1)/count)``: avoids z^2 = 1 and, for count = 16, z^2 = -1."""
    return [mpmath.expj(mpmath.pi * (2 * j + 1) / count) for j in range(count)]


def verify_weight_factorization(which: str, params: dict, sample_points=None, K: int = 200, prec: int = DEFAULT_PREC):
    """Compare both sides of a weight factorization at points on the unit circle.

    ``AW_pair``     Delta(z;a,b,-a,-b|q) = Delta(z^2;a^2,b^2,-1,-q|q^2)
                    = Delta(z^2;a^2,b^2,-q,-q^2|q^2)/((1+z^2)(1+z^-2))
    ``AW_reparam``  Delta(z;a,b,q^1/2,-q^1/2|q) = Delta(z;a,qa,b,qb|q^2)
    ``Koornwinder_pair`` is delegated to :mod:`quadtrans.twovar`.
    """
    if which == "Koornwinder_pair":
        from .twovar import verify_koornwinder_weight

        return verify_koornwinder_weight(params, sample_points, K, prec)
    with mpmath.workprec(prec):
        pts = sample_points if sample_points is not None else default_sample_points()
        pts = [to_mp(z) if not isinstance(z, (mpmath.mpf, mpmath.mpc)) else z for z in pts]
        worst = mpmath.mpf(0)
        results = []
        for z in pts:
            if which == "AW_pair":
                a, b, q = params["a"], params["b"], params["q"]
                L, bl = _aw_delta(z, (a, b, -a, -b), q, K)
                R1, b1 = _aw_delta(z * z, (a * a, b * b, -1, -q), q * q, K)
                R2, b2 = _aw_delta(z * z, (a * a, b * b, -q, -q * q), q * q, K)
                R2 = R2 / ((1 + z * z) * (1 + 1 / (z * z)))
                comps = [(L, R1, bl + b1), (L, R2, bl + b2)]
            elif which == "AW_reparam":
                a, b, p = params["a"], params["b"], params["p"]
                q = p * p
                L, bl = _aw_delta(z, (a, b, p, -p), q, K)
                R, br = _aw_delta(z, (a, q * a, b, q * b), q * q, K)
                comps = [(L, R, bl + br)]
            else:
                raise UnknownId(which)
            for u, v, bd in comps:
                scale = max(abs(u), abs(v))
                diff = abs(u - v)
                allowed = 2 * bd * scale + mpmath.mpf(2) ** (-prec + 16) * (1 + scale)
                if diff > allowed:
                    raise BoundExceeded(f"{which}: |difference| {mpmath.nstr(diff, 5)} > bound {mpmath.nstr(allowed, 5)}")
                worst = max(worst, diff / allowed if allowed else 0)
                results.append(float(diff))
        return {"which": which, "status": "pass", "points": len(pts), "max_diff": max(results) if results else 0.0, "K": K}


# ---------------------------------------------------------------------------
# serialization


def record_to_text(r: IdentityRecord) -> str:
    lines = [
        f"id: {r.id}",
        f"ref: {r.ref}",
        f"lhs: {r.lhs.family} | degree {r.lhs.degree(0)},{r.lhs.degree(1)} | {r.lhs.text}",
        f"rhs: {r.rhs.family} | degree {r.rhs.degree(0)},{r.rhs.degree(1)} | {r.rhs.text}",
        f"prefactor: {r.prefactor_text}",
        f"mode: {r.mode}",
        f"anchor_kind: {r.anchor_kind if r.mode == 'ratio' else 'none'}",
        f"form: {r.form}",
        f"variable: {r.variable}",
        f"parity: {r.parity}",
        f"validity: {r.validity_text}",
        f"check_level: {r.check_level}",
        f"alias_of: {r.alias_of or ''}",
    ]
    for i, d in enumerate(r.defaults):
        lines.append(f"default.{i}: " + ", ".join(f"{k}={_fmt(v)}" for k, v in d.items()))
    return "\n".join(lines) + "\n"


def catalog_to_text(records=None) -> str:
    return "\n".join(record_to_text(r) for r in (records if records is not None else catalog()))


def parse_records(text: str):
    """Parse the key: value block format into dicts (one per record)."""
    out, cur = [], {}
    for line in text.splitlines():
        if not line.strip():
            if cur:
                out.append(cur)
                cur = {}
            continue
        key, _, value = line.partition(":")
        cur[key.strip()] = value.strip()
    if cur:
        out.append(cur)
    return out


def record_from_text(text: str) -> IdentityRecord:
    """Resolve a serialized record against the catalog and check that it matches."""
    blocks = parse_records(text)
    if len(blocks) != 1:
        raise ValueError("expected exactly one record")
    rec = lookup(blocks[0]["id"])
    if record_to_text(rec) != text.strip("\n") + "\n":
        raise ValueError(f"serialized record {rec.id} does not match the catalog entry")
    return rec
