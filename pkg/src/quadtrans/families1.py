"""Constructors for the one-variable families of the (q-)Askey scheme.

Every constructor returns a :class:`~quadtrans.poly.Polynomial1` in the family's
natural variable with exact coefficients when the parameters are exact:

==========================  =====================================================
family                      variable
==========================  =====================================================
jacobi, laguerre, hermite   x
askey_wilson                x = (z + 1/z)/2 (``form="z"`` gives a SymLaurent1)
big_q_jacobi                x
little_q_jacobi, wall       x
discrete_q_hermite_I        x
q_racah                     y = q^-x + gamma delta q^(x+1)
wilson, continuous_dual_hahn X = x^2
continuous_hahn             x
meixner_pollaczek           x
racah, dual_hahn            lambda = x (x + gamma + delta + 1)
hahn, krawtchouk            x
==========================  =====================================================

Normalizations: ``"paper"`` is the classical normalization (the one whose
hypergeometric representation carries the usual prefactor), ``"ratio"`` is the
bare hypergeometric sum (value 1 at the anchor point) and ``"monic"`` divides by
the leading coefficient.  For Askey--Wilson, ``"monic"`` means monic as a
symmetric Laurent polynomial in z, i.e. leading coefficient ``2**n`` in x.

The continuous Hahn and Meixner--Pollaczek unnormalized leading constants
follow Koekoek--Lesky--Swarttouw:
``p_n(x;a,b,c,d) = i^n (a+c)_n (a+d)_n / n! * 3F2(...)`` and
``P_n^(lam)(x;phi) = (2 lam)_n / n! * e^(i n phi) * 2F1(...)``.
The Meixner--Pollaczek angle enters through ``phase = e^(i phi)`` so that
``phi = pi/2`` (``phase = i``) stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import (
    AnchorVanishes,
    DegreeOutOfRange,
    LowerParameterPole,
    ParameterConstraintViolated,
    RecurrenceMismatch,
)
from .poly import Polynomial1, SymLaurent1
from .scalar import (
    GaussRat,
    I,
    is_exact,
    pochhammer,
    q_pochhammer,
    simplify,
    termination_index,
    to_mp,
)

X = Polynomial1.x()


def _one(*vals):
    return Fraction(1) if all(is_exact(v) for v in vals) else 1


def hyp_poly(n_terms, upper, lower, z, factor, q=None, expo=0):
    """Sum ``sum_{k=0}^{n_terms} c_k * prod_{j<k} factor(j)``.

    ``c_k`` is the scalar part of a (basic) hypergeometric term built from the
    constant ``upper``/``lower`` parameters and argument ``z``; ``factor(j)`` is a
    Polynomial1 carrying the variable-dependent Pochhammer factors.  ``expo`` is
    the exponent of ``(-1)^k q^(k(k-1)/2)`` in the basic case.
    """
    c = _one(*upper, *lower, z)
    basis = Polynomial1([1])
    total = Polynomial1()
    qk = _one(q) if q is not None else None
    for k in range(n_terms + 1):
        total = total + basis * c
        if k == n_terms:
            break
        if q is None:
            num = 1
            for a in upper:
                num = num * (a + k)
            den = k + 1
            for b in lower:
                f = b + k
                if f == 0:
                    raise LowerParameterPole(f"lower parameter {b} vanishes at k={k + 1}")
                den = den * f
            c = c * num * z / den
        else:
            num = 1
            for a in upper:
                num = num * (1 - a * qk)
            den = 1 - q * qk
            for b in lower:
                f = 1 - b * qk
                if f == 0:
                    raise LowerParameterPole(f"lower parameter {b} vanishes at k={k + 1}")
                den = den * f
            extra = (-qk) ** expo if expo >= 0 else 1 / (-qk) ** (-expo)
            c = c * num * z * extra / den
            qk = qk * q
        basis = basis * factor(k)
        if c == 0:
            break
    return total


def _finite_range(n, lowers, q=None, name="family"):
    """Check ``n <= N`` where some lower parameter terminates at ``N``."""
    N = termination_index(lowers, q)
    if N is None:
        raise ParameterConstraintViolated(f"{name}: no lower parameter fixes a finite N ({lowers})")
    if n > N:
        raise DegreeOutOfRange(f"{name}: degree {n} exceeds N = {N}")
    return N


# ---------------------------------------------------------------------------
# q = 1, continuous


def jacobi(n, alpha, beta, normalization="paper"):
    """``P_n^(alpha,beta)(x) = (alpha+1)_n/n! 2F1(-n, n+alpha+beta+1; alpha+1; (1-x)/2)``."""
    half_one_minus_x = Polynomial1([Fraction(1, 2), Fraction(-1, 2)])
    s = hyp_poly(n, [-n, n + alpha + beta + 1], [alpha + 1], 1, lambda j: half_one_minus_x)
    if normalization == "ratio":
        return s
    p = s * (pochhammer(alpha + 1, n) / factorial(n))
    return p.monic() if normalization == "monic" else p


def laguerre(n, alpha, normalization="paper"):
    s = hyp_poly(n, [-n], [alpha + 1], 1, lambda j: X)
    if normalization == "ratio":
        return s
    p = s * (pochhammer(alpha + 1, n) / factorial(n))
    return p.monic() if normalization == "monic" else p


def hermite(n, normalization="paper"):
    """``H_n(x) = (2x)^n 2F0(-n/2, -(n-1)/2; -; -x^-2)``, expanded termwise."""
    coeffs = [Fraction(0)] * (n + 1)
    a, b = Fraction(-n, 2), Fraction(-(n - 1), 2)
    c = Fraction(2) ** n
    k = 0
    while n - 2 * k >= 0:
        coeffs[n - 2 * k] = c
        c = c * (a + k) * (b + k) * (-1) / (k + 1)
        k += 1
    p = Polynomial1(coeffs)
    return p.monic() if normalization == "monic" else p


# ---------------------------------------------------------------------------
# q-case, continuous


def continuous_q_hermite_monic(n, q):
    """Monic continuous q-Hermite in x: ``x h_n = h_{n+1} + (1 - q^n)/4 h_{n-1}``."""
    prev, cur = Polynomial1(), Polynomial1([1])
    for k in range(n):
        prev, cur = cur, X * cur - prev * ((1 - q**k) / 4)
    return cur


def askey_wilson(n, a, b, c, d, q, normalization="monic", form="x"):
    """Askey--Wilson polynomial of degree n.

    ``"ratio"``  4phi3(q^-n, q^(n-1)abcd, az, a/z; ab, ac, ad; q, q)
    ``"paper"``  p_n = a^-n (ab, ac, ad; q)_n * ratio
    ``"monic"``  P_n = p_n / (abcd q^(n-1); q)_n, monic in z
    """
    params = [a, b, c, d]
    if a == 0:
        if normalization == "ratio":
            raise AnchorVanishes("ratio normalization needs a != 0")
        nz = [p for p in params if p != 0]
        if not nz:
            h = continuous_q_hermite_monic(n, q)
            p = h * Fraction(2) ** n if is_exact(q) else h * 2**n
            return SymLaurent1.from_x_poly(p) if form == "z" else p
        a = nz[0]
        rest = list(params)
        rest.remove(a)
        b, c, d = rest
    abcd = a * b * c * d
    factor = lambda j: Polynomial1([1 + a * a * q ** (2 * j), -2 * a * q**j])
    s = hyp_poly(n, [q**-n, q ** (n - 1) * abcd], [a * b, a * c, a * d], q, factor, q=q)
    if normalization == "ratio":
        p = s
    else:
        p = s * (q_pochhammer(a * b, q, n) * q_pochhammer(a * c, q, n) * q_pochhammer(a * d, q, n) / a**n)
        if normalization == "monic":
            p = p / q_pochhammer(abcd * q ** (n - 1), q, n)
    return SymLaurent1.from_x_poly(p) if form == "z" else p


def big_q_jacobi(n, a, b, c, d, q):
    """``P_n(x;a,b,c,d;q) = 3phi2(q^-n, q^(n+1)ab, qa x/c; qa, -qad/c; q, q)``."""
    s = q * a / c
    return hyp_poly(
        n,
        [q**-n, q ** (n + 1) * a * b],
        [q * a, -q * a * d / c],
        q,
        lambda j: Polynomial1([1, -s * q**j]),
        q=q,
    )


def little_q_jacobi(n, a, b, q):
    """``p_n(x;a,b;q) = 2phi1(q^-n, q^(n+1)ab; qa; q, qx)``."""
    return hyp_poly(n, [q**-n, q ** (n + 1) * a * b], [q * a], 1, lambda j: Polynomial1([0, q]), q=q)


def wall(n, a, q):
    """Little q-Laguerre (Wall) polynomial ``p_n(x;a;q) = p_n(x;a,0;q)``."""
    return little_q_jacobi(n, a, 0, q)


def discrete_q_hermite_I(n, q):
    """``h_n(x;q) = q^(n(n-1)/2) 2phi1(q^-n, 1/x; 0; q, -qx)``.

    ``(1/x; q)_k (-qx)^k = prod_{j<k} (-q)(x - q^j)`` keeps the sum polynomial.
    """
    s = hyp_poly(n, [q**-n], [0], 1, lambda j: Polynomial1([q * q**j, -q]), q=q)
    return s * q ** (n * (n - 1) // 2)


def q_racah(n, alpha, beta, gamma, delta, q, check_range=True):
    """q-Racah polynomial as a polynomial in ``y = q^-x + gamma delta q^(x+1)``."""
    lowers = [alpha * q, beta * delta * q, gamma * q]
    if check_range:
        _finite_range(n, lowers, q, "q_racah")
    gd = gamma * delta
    return hyp_poly(
        n,
        [q**-n, alpha * beta * q ** (n + 1)],
        lowers,
        q,
        lambda j: Polynomial1([1 + gd * q ** (2 * j + 1), -(q**j)]),
        q=q,
    )


def q_racah_lattice(x, gamma, delta, q):
    return q**-x + gamma * delta * q ** (x + 1)


# ---------------------------------------------------------------------------
# q = 1, continuous with complex structure


def _sq_factor(a):
    # (a + i x)_k (a - i x)_k = prod_j ((a + j)^2 + X)
    return lambda j: Polynomial1([(a + j) * (a + j), 1])


def wilson(n, a, b, c, d, normalization="paper"):
    """Wilson polynomial in ``X = x^2``; ``"paper"`` is ``W_n`` with ``W_n(-a^2) = (a+b)_n (a+c)_n (a+d)_n``."""
    s = hyp_poly(n, [-n, n + a + b + c + d - 1], [a + b, a + c, a + d], 1, _sq_factor(a))
    if normalization == "ratio":
        return s
    p = s * (pochhammer(a + b, n) * pochhammer(a + c, n) * pochhammer(a + d, n))
    return p.monic() if normalization == "monic" else p


def continuous_dual_hahn(n, a, b, c, normalization="paper"):
    s = hyp_poly(n, [-n], [a + b, a + c], 1, _sq_factor(a))
    if normalization == "ratio":
        return s
    p = s * (pochhammer(a + b, n) * pochhammer(a + c, n))
    return p.monic() if normalization == "monic" else p


def _unit(*vals):
    return I if all(is_exact(v) for v in vals) else to_mp(I)


def continuous_hahn(n, a, b, c, d, normalization="paper"):
    """``p_n(x;a,b,c,d) = i^n (a+c)_n (a+d)_n / n! 3F2(-n, n+a+b+c+d-1, a+ix; a+c, a+d; 1)``."""
    I = _unit(a, b, c, d)
    factor = lambda j: Polynomial1([a + j, I])
    s = hyp_poly(n, [-n, n + a + b + c + d - 1], [a + c, a + d], 1, factor)
    if normalization == "ratio":
        return s
    p = s * (I**n * pochhammer(a + c, n) * pochhammer(a + d, n) / factorial(n))
    return p.monic() if normalization == "monic" else p


def meixner_pollaczek(n, lam, phase, normalization="paper"):
    """``P_n^(lam)(x; phi)`` with ``phase = e^(i phi)``."""
    phase = GaussRat(phase.re, phase.im) if isinstance(phase, GaussRat) else phase
    arg = 1 - 1 / (phase * phase)
    I = _unit(lam, phase)
    factor = lambda j: Polynomial1([lam + j, I])
    s = hyp_poly(n, [-n], [2 * lam], arg, factor)
    if normalization == "ratio":
        return s
    p = s * (pochhammer(2 * lam, n) / factorial(n) * phase**n)
    return p.monic() if normalization == "monic" else p


# ---------------------------------------------------------------------------
# q = 1, discrete


def _lambda_factor(s):
    # (-x)_k (x + s)_k = prod_j (j (s + j) - lambda),  lambda = x (x + s)
    return lambda j: Polynomial1([j * (s + j), -1])


def racah(n, alpha, beta, gamma, delta, check_range=True):
    """Racah polynomial in ``lambda = x (x + gamma + delta + 1)``."""
    lowers = [alpha + 1, beta + delta + 1, gamma + 1]
    if check_range:
        _finite_range(n, lowers, None, "racah")
    return hyp_poly(n, [-n, n + alpha + beta + 1], lowers, 1, _lambda_factor(gamma + delta + 1))


def dual_hahn(n, gamma, delta, N):
    """Dual Hahn polynomial in ``lambda = x (x + gamma + delta + 1)``."""
    if n > N:
        raise DegreeOutOfRange(f"dual_hahn: degree {n} exceeds N = {N}")
    return hyp_poly(n, [-n], [gamma + 1, -N], 1, _lambda_factor(gamma + delta + 1))


def hahn(n, alpha, beta, N):
    if n > N:
        raise DegreeOutOfRange(f"hahn: degree {n} exceeds N = {N}")
    return hyp_poly(n, [-n, n + alpha + beta + 1], [alpha + 1, -N], 1, lambda j: Polynomial1([j, -1]))


def krawtchouk(n, p, N):
    if n > N:
        raise DegreeOutOfRange(f"krawtchouk: degree {n} exceeds N = {N}")
    return hyp_poly(n, [-n], [-N], 1 / p, lambda j: Polynomial1([j, -1]))


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class FamilyInfo:
    builder: object
    params: tuple
    variable: str
    q_family: bool = False
    lattice: object = None  # maps (x, params) -> value of the polynomial variable


def _racah_lattice(x, p):
    return x * (x + p["gamma"] + p["delta"] + 1)


FAMILIES = {
    "jacobi": FamilyInfo(jacobi, ("alpha", "beta"), "x"),
    "laguerre": FamilyInfo(laguerre, ("alpha",), "x"),
    "hermite": FamilyInfo(hermite, (), "x"),
    "askey_wilson": FamilyInfo(askey_wilson, ("a", "b", "c", "d"), "x=(z+1/z)/2", True),
    "big_q_jacobi": FamilyInfo(big_q_jacobi, ("a", "b", "c", "d"), "x", True),
    "little_q_jacobi": FamilyInfo(little_q_jacobi, ("a", "b"), "x", True),
    "discrete_q_hermite_I": FamilyInfo(discrete_q_hermite_I, (), "x", True),
    "wall": FamilyInfo(wall, ("a",), "x", True),
    "q_racah": FamilyInfo(
        q_racah,
        ("alpha", "beta", "gamma", "delta"),
        "y=q^-x+gamma*delta*q^(x+1)",
        True,
        lambda x, p, q: q_racah_lattice(x, p["gamma"], p["delta"], q),
    ),
    "wilson": FamilyInfo(wilson, ("a", "b", "c", "d"), "X=x^2"),
    "continuous_hahn": FamilyInfo(continuous_hahn, ("a", "b", "c", "d"), "x"),
    "continuous_dual_hahn": FamilyInfo(continuous_dual_hahn, ("a", "b", "c"), "X=x^2"),
    "meixner_pollaczek": FamilyInfo(meixner_pollaczek, ("lam", "phase"), "x"),
    "racah": FamilyInfo(
        racah, ("alpha", "beta", "gamma", "delta"), "lambda=x(x+gamma+delta+1)", lattice=lambda x, p, q: _racah_lattice(x, p)
    ),
    "hahn": FamilyInfo(hahn, ("alpha", "beta", "N"), "x"),
    "krawtchouk": FamilyInfo(krawtchouk, ("p", "N"), "x"),
    "dual_hahn": FamilyInfo(
        dual_hahn, ("gamma", "delta", "N"), "lambda=x(x+gamma+delta+1)", lattice=lambda x, p, q: _racah_lattice(x, p)
    ),
}

# specializations reached by parameter substitution
ALIASES = {
    "al_salam_chihara": ("askey_wilson", {"b": 0, "d": 0}),
    "continuous_dual_q_hahn": ("askey_wilson", {"d": 0}),
    "continuous_q_hermite": ("askey_wilson", {"a": 0, "b": 0, "c": 0, "d": 0}),
    "continuous_q_jacobi_aw": ("askey_wilson", {}),
    "dual_q_krawtchouk": ("q_racah", {"alpha": 0}),
    "dual_q_hahn": ("q_racah", {"alpha": 0}),
}


@dataclass(frozen=True)
class FamilySpec:
    family_id: str
    params: dict = field(default_factory=dict)
    q: object = None
    normalization: str = "paper"

    def __post_init__(self):
        fid = self.family_id
        if fid in ALIASES:
            base, fixed = ALIASES[fid]
            merged = {**self.params, **fixed}
            object.__setattr__(self, "family_id", base)
            object.__setattr__(self, "params", merged)
        info = FAMILIES.get(self.family_id)
        if info is None:
            raise KeyError(f"unknown family {self.family_id!r}")
        missing = [p for p in info.params if p not in self.params]
        if missing:
            raise ParameterConstraintViolated(f"{self.family_id}: missing parameters {missing}")
        if info.q_family and self.q is None:
            raise ParameterConstraintViolated(f"{self.family_id} needs a base q")
        if self.family_id == "q_racah":
            p, q = self.params, self.q
            if termination_index([p["alpha"] * q, p["beta"] * p["delta"] * q, p["gamma"] * q], q) is None:
                raise ParameterConstraintViolated("q_racah needs alpha q, beta delta q or gamma q equal to q^-N")

    @property
    def info(self):
        return FAMILIES[self.family_id]


_NORMALIZED = {"jacobi", "laguerre", "hermite", "wilson", "continuous_dual_hahn", "continuous_hahn", "meixner_pollaczek"}


def make_polynomial(spec: FamilySpec, n: int):
    info = spec.info
    args = [spec.params[p] for p in info.params]
    kwargs = {}
    if spec.family_id == "askey_wilson":
        kwargs["normalization"] = spec.normalization if spec.normalization != "paper" else "paper"
    elif spec.family_id in _NORMALIZED:
        kwargs["normalization"] = spec.normalization
    if info.q_family:
        args.append(spec.q)
    poly = info.builder(n, *args, **kwargs)
    if spec.normalization == "monic" and spec.family_id not in _NORMALIZED and spec.family_id != "askey_wilson":
        poly = poly.monic()
    return poly


def evaluate(spec: FamilySpec, n: int, point, lattice=False):
    """Evaluate at ``point``; with ``lattice=True`` the point is a lattice index x."""
    poly = make_polynomial(spec, n)
    if lattice:
        lat = spec.info.lattice
        if lat is None:
            raise ValueError(f"{spec.family_id} has no lattice variable")
        point = lat(point, spec.params, spec.q)
    return poly(point)


# ---------------------------------------------------------------------------
# three-term recurrences (Koekoek--Lesky--Swarttouw), used as an independent oracle


def _rec_jacobi(n, p, q):
    a, b = p["alpha"], p["beta"]
    Pn, Pm = jacobi(n, a, b), jacobi(n - 1, a, b) if n else Polynomial1()
    if n == 0:
        return Polynomial1([(a - b) / 2, (a + b + 2) / 2])
    s = 2 * n + a + b
    lhs = (X * ((s + 2) * s) + (a * a - b * b)) * Pn * (s + 1) - Pm * (2 * (n + a) * (n + b) * (s + 2))
    return lhs / (2 * (n + 1) * (n + a + b + 1) * s)


def _rec_laguerre(n, p, q):
    a = p["alpha"]
    Pm = laguerre(n - 1, a) if n else Polynomial1()
    return ((Polynomial1([2 * n + a + 1, -1]) * laguerre(n, a)) - Pm * (n + a)) / (n + 1)


def _rec_hermite(n, p, q):
    Pm = hermite(n - 1) if n else Polynomial1()
    return X * 2 * hermite(n) - Pm * (2 * n)


def _rec_askey_wilson(n, p, q):
    """Monic (in x) recurrence ``x p_n = p_{n+1} + B_n p_n + C_n p_{n-1}``."""
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    abcd = a * b * c * d

    def A(k):
        return (1 - a * b * q**k) * (1 - a * c * q**k) * (1 - a * d * q**k) * (1 - abcd * q ** (k - 1)) / (
            a * (1 - abcd * q ** (2 * k - 1)) * (1 - abcd * q ** (2 * k))
        )

    def C(k):
        return a * (1 - q**k) * (1 - b * c * q ** (k - 1)) * (1 - b * d * q ** (k - 1)) * (1 - c * d * q ** (k - 1)) / (
            (1 - abcd * q ** (2 * k - 2)) * (1 - abcd * q ** (2 * k - 1))
        )

    mon = lambda k: askey_wilson(k, a, b, c, d, q).monic()
    B = (a + 1 / a - A(n) - C(n)) / 2
    nxt = X * mon(n) - mon(n) * B
    if n:
        nxt = nxt - mon(n - 1) * (A(n - 1) * C(n) / 4)
    return nxt


def _rec_q_racah(n, p, q):
    al, be, ga, de = p["alpha"], p["beta"], p["gamma"], p["delta"]

    def A(k):
        return (1 - al * q ** (k + 1)) * (1 - al * be * q ** (k + 1)) * (1 - be * de * q ** (k + 1)) * (1 - ga * q ** (k + 1)) / (
            (1 - al * be * q ** (2 * k + 1)) * (1 - al * be * q ** (2 * k + 2))
        )

    def C(k):
        return q * (1 - q**k) * (1 - be * q**k) * (ga - al * be * q**k) * (de - al * q**k) / (
            (1 - al * be * q ** (2 * k)) * (1 - al * be * q ** (2 * k + 1))
        )

    R = lambda k: q_racah(k, al, be, ga, de, q, check_range=False)
    mu = Polynomial1([-(1 + ga * de * q), 1])  # -(1 - q^-x)(1 - gamma delta q^(x+1))
    An, Cn = A(n), (C(n) if n else 0)
    out = mu * R(n) + R(n) * (An + Cn)
    if n:
        out = out - R(n - 1) * Cn
    return out / An


def _rec_racah(n, p, q):
    al, be, ga, de = p["alpha"], p["beta"], p["gamma"], p["delta"]
    A = (n + al + 1) * (n + al + be + 1) * (n + be + de + 1) * (n + ga + 1) / ((2 * n + al + be + 1) * (2 * n + al + be + 2))
    C = n * (n + al + be - ga) * (n + al - de) * (n + be) / ((2 * n + al + be) * (2 * n + al + be + 1)) if n else 0
    R = lambda k: racah(k, al, be, ga, de, check_range=False)
    out = X * R(n) + R(n) * (A + C)
    if n:
        out = out - R(n - 1) * C
    return out / A


def _rec_wilson(n, p, q):
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    s = a + b + c + d
    A = (n + s - 1) * (n + a + b) * (n + a + c) * (n + a + d) / ((2 * n + s - 1) * (2 * n + s))
    C = n * (n + b + c - 1) * (n + b + d - 1) * (n + c + d - 1) / ((2 * n + s - 2) * (2 * n + s - 1)) if n else 0
    W = lambda k: wilson(k, a, b, c, d, "ratio")
    out = Polynomial1([a * a, 1]) * W(n) * (-1) + W(n) * (A + C)
    if n:
        out = out - W(n - 1) * C
    return out / A


def _rec_continuous_dual_hahn(n, p, q):
    a, b, c = p["a"], p["b"], p["c"]
    A = (n + a + b) * (n + a + c)
    C = n * (n + b + c - 1)
    S = lambda k: continuous_dual_hahn(k, a, b, c, "ratio")
    out = Polynomial1([a * a, 1]) * S(n) * (-1) + S(n) * (A + C)
    if n:
        out = out - S(n - 1) * C
    return out / A


def _rec_krawtchouk(n, p, q):
    pp, N = p["p"], p["N"]
    K = lambda k: krawtchouk(k, pp, N)
    A = pp * (N - n)
    C = n * (1 - pp)
    out = X * K(n) * (-1) + K(n) * (A + C)
    if n:
        out = out - K(n - 1) * C
    return out / A


def _rec_hahn(n, p, q):
    al, be, N = p["alpha"], p["beta"], p["N"]
    A = (n + al + be + 1) * (n + al + 1) * (N - n) / ((2 * n + al + be + 1) * (2 * n + al + be + 2))
    C = n * (n + al + be + N + 1) * (n + be) / ((2 * n + al + be) * (2 * n + al + be + 1)) if n else 0
    Q = lambda k: hahn(k, al, be, N)
    out = X * Q(n) * (-1) + Q(n) * (A + C)
    if n:
        out = out - Q(n - 1) * C
    return out / A


RECURRENCES = {
    "jacobi": _rec_jacobi,
    "laguerre": _rec_laguerre,
    "hermite": _rec_hermite,
    "askey_wilson": _rec_askey_wilson,
    "q_racah": _rec_q_racah,
    "racah": _rec_racah,
    "wilson": _rec_wilson,
    "continuous_dual_hahn": _rec_continuous_dual_hahn,
    "krawtchouk": _rec_krawtchouk,
    "hahn": _rec_hahn,
}


def _generic_three_term(polys):
    """Check that ``x p_n`` lies in span(p_{n+1}, p_n, p_{n-1}); return first failing n or None."""
    for n in range(1, len(polys) - 1):
        r = X * polys[n]
        for k in (n + 1, n, n - 1):
            pk = polys[k]
            if r.degree == pk.degree and not r.is_zero():
                r = r - pk * (r.leading / pk.leading)
        if not r.is_zero():
            return n
    return None


def finite_range(spec: FamilySpec):
    """Largest admissible degree N for finite families, else None."""
    p = spec.params
    fid = spec.family_id
    if fid in ("hahn", "krawtchouk", "dual_hahn"):
        return int(p["N"])
    if fid == "racah":
        return termination_index([p["alpha"] + 1, p["beta"] + p["delta"] + 1, p["gamma"] + 1])
    if fid == "q_racah":
        q = spec.q
        return termination_index([p["alpha"] * q, p["beta"] * p["delta"] * q, p["gamma"] * q], q)
    return None


def three_term_recurrence_check(spec: FamilySpec, n_max: int):
    """Compare ``make_polynomial`` with the family's three-term recurrence up to ``n_max``.

    Families without a tabulated recurrence fall back to checking that a
    three-term relation exists at all.  Returns a small report dict; raises
    :class:`RecurrenceMismatch` on failure.
    """
    if n_max <= 0:
        return {"family": spec.family_id, "n_max": n_max, "status": "pass", "route": "trivial"}
    N = finite_range(spec)
    if N is not None:
        # the recurrence produces p_{n+1} only while n + 1 <= N
        n_max = min(n_max, N)
    rec = RECURRENCES.get(spec.family_id)
    if spec.family_id == "askey_wilson" and spec.params.get("a", 0) == 0:
        rec = None
    if rec is None:
        polys = [make_polynomial(spec, k) for k in range(n_max + 1)]
        bad = _generic_three_term(polys)
        if bad is not None:
            raise RecurrenceMismatch(bad + 1, "no three-term relation")
        return {"family": spec.family_id, "n_max": n_max, "status": "pass", "route": "generic"}
    for n in range(n_max):
        expect = rec(n, spec.params, spec.q)
        if spec.family_id == "askey_wilson":
            got = askey_wilson(n + 1, *(spec.params[k] for k in "abcd"), spec.q).monic()
        elif spec.family_id in ("wilson", "continuous_dual_hahn"):
            got = FAMILIES[spec.family_id].builder(n + 1, *(spec.params[k] for k in spec.info.params), normalization="ratio")
        else:
            got = FamilySpec(spec.family_id, spec.params, spec.q, "paper")
            got = make_polynomial(got, n + 1)
        if got != expect:
            raise RecurrenceMismatch(n + 1)
    return {"family": spec.family_id, "n_max": n_max, "status": "pass", "route": "tabulated"}
