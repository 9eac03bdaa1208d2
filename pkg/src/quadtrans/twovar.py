"""Two-variable dominance orthogonal polynomials and their quadratic transformations.

Coordinates
-----------
Functionals act on one of three coordinate systems:

``plane``   polynomials in (x, y) (Poly2); dominance basis x^(m-l) y^l, e.g. the
            (xi, eta) coordinates of the region Omega
``lambda``  symmetric polynomials in (x, y) on -1 < y < x < 1; basis
            x^m y^l + x^l y^m
``torus``   W2-invariant Laurent polynomials in (z1, z2); basis orbit sums

Every functional is normalized so that the unit polynomial has value 1.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import mpmath

from .errors import (
    AnchorVanishes,
    BoundExceeded,
    HypothesisViolated,
    IdentityFailure,
    ParameterOutOfRange,
    SingularMomentMatrix,
)
from .linalg import SingularSystem, solve
from .measures import jacobi_moment
from .poly import (
    DominancePoly2,
    Laurent2,
    Poly2,
    downset,
    elementary_from_sympoly,
    orbit_sum,
    symmetric_from_laurent,
    symmetric_monomial,
    sympoly_from_elementary,
    total_key,
)
from .scalar import DEFAULT_PREC, is_exact, simplify, to_mp

BASIS_FOR_COORDS = {"plane": "monomial", "lambda": "symmetric", "torus": "orbit"}


def _frac(v):
    return Fraction(v) if isinstance(v, (int, Fraction, str)) else v


# ---------------------------------------------------------------------------
# functionals


class MomentFunctional2:
    """Base class.  Subclasses implement ``_raw(i, j)`` (plane / lambda) or
    ``_raw(a, b)`` with signed exponents (torus); values are cached."""

    kind = "abstract"
    coords = "plane"
    bound = 0

    def __init__(self):
        self._cache = {}
        self._lock = threading.Lock()

    def _raw(self, i, j):
        raise NotImplementedError

    def moment(self, i, j):
        key = (i, j)
        try:
            return self._cache[key]
        except KeyError:
            pass
        val = self._raw(i, j)
        with self._lock:
            self._cache.setdefault(key, val)
        return self._cache[key]

    def apply(self, p):
        terms = p.terms
        acc = Fraction(0) if self.exact else mpmath.mpf(0)
        for (i, j), c in terms.items():
            acc = acc + c * self.moment(i, j)
        return simplify(acc) if is_exact(acc) else acc

    @property
    def exact(self):
        return self.bound == 0

    # symmetry hypotheses -------------------------------------------------
    def even_in_x(self, degree=6) -> bool:
        """w(x, y) = w(-x, y): odd powers of x integrate to zero."""
        if self.coords != "plane":
            return False
        return all(_small(self.moment(i, j), self.bound) for i in range(1, degree + 1, 2) for j in range(degree + 1 - i))

    def reflection_invariant(self, degree=6) -> bool:
        """W(x, y) = W(-y, -x) on the lambda region / its torus counterpart."""
        if self.coords == "lambda":
            for m in range(degree + 1):
                for l in range(m + 1):
                    if (m + l) % 2 and not _small(self.apply(symmetric_monomial((m, l))), self.bound):
                        return False
            return True
        if self.coords == "torus":
            for a in range(-degree, degree + 1):
                for b in range(-degree, degree + 1):
                    d = self.moment(a, b) - (-1) ** (a + b) * self.moment(-b, -a)
                    if not _small(d, 2 * self.bound):
                        return False
            return True
        return False


def _small(v, bound):
    if bound == 0 and is_exact(v):
        return v == 0
    return abs(v) <= 4 * bound + mpmath.mpf(2) ** (-mpmath.mp.prec + 24)


class DiscreteFinite2(MomentFunctional2):
    """Finitely many points with exact weights."""

    kind = "DiscreteFinite2"

    def __init__(self, points, weights, coords="plane"):
        super().__init__()
        if len(points) != len(weights) or not points:
            raise ValueError("need matching non-empty points and weights")
        self.coords = coords
        self.points = [tuple(p) for p in points]
        self.weights = list(weights)
        self._mass = sum(self.weights)
        if self._mass == 0:
            raise ValueError("total mass is zero")

    def _raw(self, i, j):
        acc = 0
        for (x, y), w in zip(self.points, self.weights):
            acc = acc + w * x**i * y**j
        return acc / self._mass


class ComposedFunctional(MomentFunctional2):
    """``p -> L(weight * p(X, Y)) / L(weight)`` for polynomial maps ``X, Y``.

    This is the pushforward of ``weight * L`` along ``(x, y) -> (X, Y)``; the
    derived functionals of the quadratic transformations are all of this form.
    """

    kind = "Composed"
    coords = "plane"

    def __init__(self, base: MomentFunctional2, X: Poly2, Y: Poly2, weight: Poly2 = None):
        super().__init__()
        if base.coords != "plane":
            raise ValueError("base functional must act on plane polynomials")
        self.base, self.X, self.Y = base, X, Y
        self.weight = weight if weight is not None else Poly2.const(1)
        self.bound = base.bound
        self._mass = base.apply(self.weight)
        self._xp, self._yp = [Poly2.const(1)], [Poly2.const(1)]

    def _pow(self, cache, base, n):
        while len(cache) <= n:
            cache.append(cache[-1] * base)
        return cache[n]

    def _raw(self, i, j):
        p = self._pow(self._xp, self.X, i) * self._pow(self._yp, self.Y, j) * self.weight
        return self.base.apply(p) / self._mass


class LambdaFromPlane(MomentFunctional2):
    """The lambda-side view ``P(x, y) = p(x+y, xy)`` of a plane functional in (xi, eta)."""

    kind = "LambdaFromPlane"
    coords = "lambda"

    def __init__(self, base: MomentFunctional2):
        super().__init__()
        self.base = base
        self.bound = base.bound

    def apply(self, p: Poly2):
        e = elementary_from_sympoly(DominancePoly2.from_poly2(p, "symmetric"))
        return self.base.apply(e.to_poly2())


class PlaneFromLambda(MomentFunctional2):
    """A functional in (xi, eta) from one on symmetric polynomials in (x, y)."""

    kind = "PlaneFromLambda"
    coords = "plane"

    def __init__(self, base: MomentFunctional2):
        super().__init__()
        self.base = base
        self.bound = base.bound

    def _raw(self, i, j):
        p = DominancePoly2({(i + j, j): 1}, "monomial")
        return self.base.apply(sympoly_from_elementary(p).to_poly2())


class TorusFromLambda(MomentFunctional2):
    """``x_i = (z_i + 1/z_i)/2``: a lambda functional acting on W2-invariant Laurent polynomials."""

    kind = "TorusFromLambda"
    coords = "torus"

    def __init__(self, base: MomentFunctional2):
        super().__init__()
        if base.coords != "lambda":
            raise ValueError("base functional must be a lambda functional")
        self.base = base
        self.bound = base.bound

    def apply(self, p: Laurent2):
        s = symmetric_from_laurent(DominancePoly2.from_laurent(p))
        return self.base.apply(s.to_poly2())

    def moment(self, a, b):
        raise TypeError("single Laurent monomials are not W2-invariant; use apply()")

    def reflection_invariant(self, degree=6) -> bool:
        return self.base.reflection_invariant(degree)


class TorusProductRatio(MomentFunctional2):
    """``f -> L(weight * f(z1 z2, z1/z2)) / L(weight)`` for torus functionals."""

    kind = "TorusProductRatio"
    coords = "torus"

    def __init__(self, base: MomentFunctional2, weight: Laurent2 = None):
        super().__init__()
        if base.coords != "torus":
            raise ValueError("base functional must be a torus functional")
        self.base = base
        self.weight = weight if weight is not None else Laurent2({(0, 0): 1})
        self.bound = base.bound
        self._mass = base.apply(self.weight)

    def apply(self, p: Laurent2):
        return self.base.apply(p.substitute_product_ratio() * self.weight) / self._mass

    def moment(self, a, b):
        raise TypeError("use apply()")


# -- BC2 weights ---------------------------------------------------------------


def _bc2_check(alpha, beta, gamma):
    if not (alpha > -1 and beta > -1 and gamma > -1):
        raise ParameterOutOfRange(f"BC2 weight needs alpha, beta, gamma > -1, got {alpha}, {beta}, {gamma}")
    if not (alpha + gamma > Fraction(-3, 2) and beta + gamma > Fraction(-3, 2)):
        raise ParameterOutOfRange("BC2 weight needs alpha + gamma, beta + gamma > -3/2")


class BC2Exact(MomentFunctional2):
    """Exact moments of ``(1-xi+eta)^alpha (1+xi+eta)^beta (xi^2-4 eta)^gamma`` on Omega.

    In x, y with xi = x+y, eta = xy the integrand is symmetric once
    2 gamma + 1 is an even integer, so the ordered-region integral is half the
    square integral of a polynomial against two Jacobi weights.
    """

    kind = "BC2Exact"
    coords = "plane"

    def __init__(self, alpha, beta, gamma):
        super().__init__()
        alpha, beta, gamma = Fraction(alpha), Fraction(beta), Fraction(gamma)
        _bc2_check(alpha, beta, gamma)
        e = 2 * gamma + 1
        if e.denominator != 1 or e < 0 or e.numerator % 2:
            raise ParameterOutOfRange(f"exact BC2 engine needs 2*gamma+1 even and >= 0, got {e}")
        self.alpha, self.beta, self.gamma = alpha, beta, gamma
        self._e = int(e)
        self._jm = {}
        self._mass = self._square(0, 0)

    def _jac(self, i):
        if i not in self._jm:
            self._jm[i] = jacobi_moment(i, self.alpha, self.beta)
        return self._jm[i]

    def _square(self, i, j):
        e = self._e
        tot = Fraction(0)
        for a in range(i + 1):
            for b in range(e + 1):
                c = comb(i, a) * comb(e, b) * (-1) ** (e - b)
                tot += c * self._jac(a + b + j) * self._jac(i - a + e - b + j)
        return tot

    def _raw(self, i, j):
        return self._square(i, j) / self._mass

    def even_in_x(self, degree=6):
        return self.alpha == self.beta


def gauss_jacobi01(N: int, a, b):
    """Gauss nodes and weights on [0, 1] for the weight ``u^a (1-u)^b`` (Golub--Welsch)."""
    al, be = mpmath.mpf(b), mpmath.mpf(a)
    J = mpmath.zeros(N, N)
    for n in range(N):
        s = 2 * n + al + be
        J[n, n] = (be - al) / (al + be + 2) if n == 0 else (be**2 - al**2) / (s * (s + 2))
        if n == 1:
            bn = 4 * (1 + al) * (1 + be) / ((2 + al + be) ** 2 * (3 + al + be))
        elif n > 1:
            bn = 4 * n * (n + al) * (n + be) * (n + al + be) / (s**2 * (s + 1) * (s - 1))
        if n >= 1:
            J[n, n - 1] = J[n - 1, n] = mpmath.sqrt(bn)
    E, Q = mpmath.eigsy(J)
    mu0 = mpmath.gamma(al + 1) * mpmath.gamma(be + 1) / mpmath.gamma(al + be + 2)
    return [((1 + E[i]) / 2, mu0 * Q[0, i] ** 2) for i in range(N)]


# Lambda = {-1 < y < x < 1} is cut into six triangles, each with a vertex of
# Lambda as Duffy apex, so every vanishing factor becomes rho^a t^b (1-t)^c.
_THIRD = Fraction(1, 3)
_A, _B, _C = (-1, -1), (1, -1), (1, 1)
_G = (_THIRD, -_THIRD)
_MAB, _MBC, _MAC = (0, -1), (1, 0), (0, 0)
_TRIANGLES = [(_A, _MAB, _G), (_A, _G, _MAC), (_B, _MBC, _G), (_B, _G, _MAB), (_C, _MAC, _G), (_C, _G, _MBC)]
_FACTORS = [((-1, 0, 1), "alpha"), ((0, -1, 1), "alpha"), ((1, 0, 1), "beta"), ((0, 1, 1), "beta"), ((1, -1, 0), "e")]


def _affine(f, P):
    return f[0] * P[0] + f[1] * P[1] + f[2]


class BC2Quadrature(MomentFunctional2):
    """BC2 moments by tensor Gauss--Jacobi on a Duffy split of Lambda.

    The order grows by half until consecutive moment tables agree to
    ``target``; ``bound`` is the last observed difference.
    """

    kind = "BC2Quadrature"
    coords = "plane"

    def __init__(self, alpha, beta, gamma, precision: int = DEFAULT_PREC, order: int = None,
                 target=mpmath.mpf("1e-25"), degree: int = 12, max_order: int = 64):
        super().__init__()
        alpha, beta, gamma = Fraction(alpha), Fraction(beta), Fraction(gamma)
        _bc2_check(alpha, beta, gamma)
        self.alpha, self.beta, self.gamma = alpha, beta, gamma
        self.precision = precision
        self.degree = degree
        self.target = target
        with mpmath.workprec(precision):
            if order is not None:
                self.order = order
                self._table = self._moments(order)
                self.bound = mpmath.mpf(0)
                prev = self._moments(max(4, order * 2 // 3))
                self.bound = self._diff(prev, self._table)
            else:
                N = 12
                prev = self._moments(N)
                while True:
                    N2 = N * 3 // 2
                    cur = self._moments(N2)
                    d = self._diff(prev, cur)
                    N, prev = N2, cur
                    if d <= target:
                        break
                    if N > max_order:
                        raise BoundExceeded(f"BC2 quadrature did not reach {target} by order {N}")
                self.order, self._table, self.bound = N, cur, d

    @staticmethod
    def _diff(a, b):
        return max(abs(a[k] - b[k]) for k in a)

    def _nodes(self, N):
        ex = {"alpha": to_mp(self.alpha), "beta": to_mp(self.beta), "e": 2 * to_mp(self.gamma) + 1}
        out = []
        for V, P0, P1 in _TRIANGLES:
            det = abs((P0[0] - V[0]) * (P1[1] - V[1]) - (P0[1] - V[1]) * (P1[0] - V[0]))
            rpow, tpow, spow = mpmath.mpf(1), mpmath.mpf(0), mpmath.mpf(0)
            kinds = []
            for f, name in _FACTORS:
                if _affine(f, V) == 0:
                    rpow += ex[name]
                    if _affine(f, P0) == 0:
                        tpow += ex[name]
                        kinds.append("t")
                    elif _affine(f, P1) == 0:
                        spow += ex[name]
                        kinds.append("s")
                    else:
                        kinds.append("r")
                else:
                    kinds.append("n")
            R = gauss_jacobi01(N, rpow, 0)
            T = gauss_jacobi01(N, tpow, spow)
            Vm = (to_mp(V[0]), to_mp(V[1]))
            for t, wt in T:
                P = (to_mp(P0[0]) + t * (P1[0] - P0[0]), to_mp(P0[1]) + t * (P1[1] - P0[1]))
                smooth_t = wt * det
                for (f, name), k in zip(_FACTORS, kinds):
                    if k == "t":
                        smooth_t *= (_affine(f, P) / t) ** ex[name]
                    elif k == "s":
                        smooth_t *= (_affine(f, P) / (1 - t)) ** ex[name]
                    elif k == "r":
                        smooth_t *= _affine(f, P) ** ex[name]
                for r, wr in R:
                    x = Vm[0] + r * (P[0] - Vm[0])
                    y = Vm[1] + r * (P[1] - Vm[1])
                    w = wr * smooth_t
                    for (f, name), k in zip(_FACTORS, kinds):
                        if k == "n":
                            w *= _affine(f, (x, y)) ** ex[name]
                    out.append((x + y, x * y, w))
        return out

    def _moments(self, N):
        D = self.degree
        table = {}
        mass = mpmath.mpf(0)
        for xi, eta, w in self._nodes(N):
            mass += w
            xp = w
            for i in range(D + 1):
                v = xp
                for j in range(D + 1 - i):
                    table[(i, j)] = table.get((i, j), 0) + v
                    v *= eta
                xp *= xi
        return {k: v / mass for k, v in table.items()}

    def _raw(self, i, j):
        if i + j > self.degree:
            raise ValueError(f"moment ({i},{j}) beyond quadrature degree {self.degree}")
        return self._table[(i, j)]

    def even_in_x(self, degree=6):
        return self.alpha == self.beta


# -- Koornwinder torus weight ----------------------------------------------------


def _qprod_mp(a, q, K):
    val = mpmath.mpf(1)
    qk = mpmath.mpf(1)
    for _ in range(K):
        val *= 1 - a * qk
        qk *= q
    return val


def _tail(a, q, K):
    return 2 * abs(a) * abs(q) ** K / (1 - abs(q))


def koornwinder_factors(q, t, params, K):
    """``F(z)`` and ``G(w)`` with ``Delta(z1, z2) = F(z1) F(z2) G(z1 z2) G(z1/z2)``,
    plus a relative truncation bound for the full weight."""
    qm, tm = to_mp(q), to_mp(t)
    pm = [to_mp(a) for a in params]

    def F(z):
        v = _qprod_mp(z * z, qm, K) * _qprod_mp(1 / (z * z), qm, K)
        for a in pm:
            v /= _qprod_mp(a * z, qm, K) * _qprod_mp(a / z, qm, K)
        return v

    def G(w):
        return _qprod_mp(w, qm, K) * _qprod_mp(1 / w, qm, K) / (_qprod_mp(tm * w, qm, K) * _qprod_mp(tm / w, qm, K))

    per = [1, 1] + [abs(a) for a in pm]
    bound = 2 * sum(_tail(a, qm, K) for a in per) + 4 * _tail(1, qm, K) + 4 * _tail(tm, qm, K)
    return F, G, bound


def koornwinder_delta(z1, z2, q, t, params, K):
    F, G, bound = koornwinder_factors(q, t, params, K)
    return F(z1) * F(z2) * G(z1 * z2) * G(z1 / z2), bound


class KoornwinderTorus(MomentFunctional2):
    """Constant terms ``CT[z1^a z2^b Delta] / CT[Delta]`` by the trapezoid rule.

    On an M x M grid the rule returns the constant term of the truncated
    weight up to Fourier aliasing at distance M.  The grid is shifted off the
    roots of unity so that parameters like c = -1 (a removable singularity of
    the truncated products at z = -1) never hit a node.  ``bound`` adds the
    truncation bound of the products to the observed change between the M
    and M/2 rules.
    """

    kind = "KoornwinderTorus"
    coords = "torus"

    def __init__(self, q, t, a, b, c, d, K: int = None, precision: int = DEFAULT_PREC, M: int = 256,
                 target=mpmath.mpf("1e-25")):
        super().__init__()
        self.q, self.t, self.params = q, t, (a, b, c, d)
        self.precision = precision
        self.M = M
        with mpmath.workprec(precision):
            qm = abs(to_mp(q))
            if not qm < 1:
                raise ParameterOutOfRange("Koornwinder weight needs |q| < 1")
            if K is None:
                K = int(mpmath.ceil(mpmath.log(target) / mpmath.log(qm))) + 4
            self.K = K
            F, G, trunc = koornwinder_factors(q, t, self.params, K)
            self.truncation_bound = trunc
            self._grids = {}
            for m in (M, M // 2):
                self._grids[m] = self._grid(m, F, G)
            self._mass = {m: self._ct(m, 0, 0) for m in self._grids}
            self.aliasing_bound = mpmath.mpf(0)
            self.bound = trunc
            if self.bound > target:
                raise BoundExceeded(f"truncation bound {mpmath.nstr(self.bound, 5)} exceeds {target}")

    def _grid(self, m, F, G):
        th1, th2 = mpmath.mpf(1) / 3, mpmath.mpf(1) / 7
        z1 = [mpmath.expjpi(2 * (j + th1) / m) for j in range(m)]
        z2 = [mpmath.expjpi(2 * (k + th2) / m) for k in range(m)]
        F1 = [F(z) for z in z1]
        F2 = [F(z) for z in z2]
        Gp = {}
        Gm = {}
        for j in range(m):
            for k in range(m):
                s, r = (j + k) % m, (j - k) % m
                if s not in Gp:
                    Gp[s] = G(z1[j] * z2[k])
                if r not in Gm:
                    Gm[r] = G(z1[j] / z2[k])
        T = [[F1[j] * F2[k] * Gp[(j + k) % m] * Gm[(j - k) % m] for k in range(m)] for j in range(m)]
        return {"z1": z1, "z2": z2, "T": T, "U": {}}

    def _ct(self, m, a, b):
        g = self._grids[m]
        U = g["U"].get(b)
        if U is None:
            z2b = [z**b for z in g["z2"]]
            U = [mpmath.fsum(row[k] * z2b[k] for k in range(m)) for row in g["T"]]
            g["U"][b] = U
        z1 = g["z1"]
        return mpmath.fsum(z1[j] ** a * U[j] for j in range(m)) / (m * m)

    def _raw(self, a, b):
        with mpmath.workprec(self.precision):
            hi = self._ct(self.M, a, b) / self._mass[self.M]
            lo = self._ct(self.M // 2, a, b) / self._mass[self.M // 2]
            diff = abs(hi - lo)
            with self._lock:
                self.aliasing_bound = max(self.aliasing_bound, diff)
            return mpmath.re(hi)

    @property
    def combined_bound(self):
        return self.truncation_bound + self.aliasing_bound

    @property
    def exact(self):
        return False


# ---------------------------------------------------------------------------
# dominance Gram--Schmidt


def basis_element(kind: str, idx):
    if kind == "monomial":
        m, l = idx
        return Poly2({(m - l, l): 1})
    if kind == "symmetric":
        return symmetric_monomial(idx)
    if kind == "orbit":
        return orbit_sum(idx)
    raise ValueError(kind)


class _Gram:
    def __init__(self, L, kind):
        self.L, self.kind = L, kind
        self.cache = {}
        self.lock = threading.Lock()

    def __call__(self, i, j):
        key = (i, j) if total_key(i) <= total_key(j) else (j, i)
        if key not in self.cache:
            val = self.L.apply(basis_element(self.kind, key[0]) * basis_element(self.kind, key[1]))
            with self.lock:
                self.cache[key] = val
        return self.cache[key]


def _gs_one(gram: _Gram, idx, key, tol):
    lower = [i for i in downset(idx, key) if i != idx]
    if not lower:
        return DominancePoly2({idx: 1}, gram.kind)
    A = [[gram(i, j) for j in lower] for i in lower]
    b = [-gram(i, idx) for i in lower]
    try:
        c = solve(A, b, tol)
    except SingularSystem:
        raise SingularMomentMatrix(idx) from None
    coeffs = dict(zip(lower, c))
    coeffs[idx] = 1
    return DominancePoly2(coeffs, gram.kind)


def dominance_gram_schmidt(L: MomentFunctional2, basis_kind: str = None, upto=(0, 0), indices=None,
                           key=total_key, tol=None):
    """Monic dominance orthogonal polynomials for every index ``<= upto`` (or in ``indices``)."""
    kind = basis_kind or BASIS_FOR_COORDS[L.coords]
    if BASIS_FOR_COORDS[L.coords] != kind:
        raise ValueError(f"{kind} basis does not match {L.coords} functional")
    gram = _Gram(L, kind)
    idxs = list(indices) if indices is not None else downset(tuple(upto), key)
    if tol is None and not L.exact:
        tol = mpmath.mpf(2) ** (-mpmath.mp.prec // 2)
    return {idx: _gs_one(gram, idx, key, tol) for idx in idxs}


# ---------------------------------------------------------------------------
# region maps


@dataclass(frozen=True)
class RegionMap:
    name: str
    source: str
    target: str
    forward: object

    def spot_check(self, count: int = 50, seed: int = 0):
        rng = random.Random(seed)
        bad = []
        for _ in range(count):
            pt = sample_region(self.source, rng)
            img = self.forward(*pt)
            if not in_region(self.target, img):
                bad.append((pt, img))
        return {"map": self.name, "status": "pass" if not bad else "fail", "checked": count, "witness": bad[:1]}


def in_region(name, pt):
    if name == "Omega":
        x, y = pt
        return 1 - x + y > 0 and 1 + x + y > 0 and x * x - 4 * y > 0
    if name == "Omega'":
        x, y = pt
        return y > 0 and y - 4 * x > 0 and (1 + x) ** 2 - y > 0
    if name == "Lambda":
        x, y = pt
        return -1 < y < x < 1
    if name == "Gamma":
        z1, z2 = pt
        a1, a2 = mpmath.arg(z1), mpmath.arg(z2)
        eps = mpmath.mp.eps * 2**8
        return abs(abs(z1) - 1) < eps and abs(abs(z2) - 1) < eps and 0 < a1 < a2 < mpmath.pi
    if name == "torus":
        z1, z2 = pt
        eps = mpmath.mp.eps * 2**8
        return abs(abs(z1) - 1) < eps and abs(abs(z2) - 1) < eps
    raise ValueError(name)


_PYTH = [(Fraction(3, 5), Fraction(4, 5)), (Fraction(5, 13), Fraction(12, 13)), (Fraction(8, 17), Fraction(15, 17)),
         (Fraction(7, 25), Fraction(24, 25)), (Fraction(20, 29), Fraction(21, 29)), (Fraction(12, 37), Fraction(35, 37))]


def pythagorean_cosines():
    """Rational (cos, sin) pairs with sin > 0, both signs of cos."""
    out = []
    for c, s in _PYTH:
        out += [(c, s), (-c, s), (s, c), (-s, c)]
    return sorted(set(out), reverse=True)


def sample_region(name, rng):
    if name == "Lambda":
        while True:
            x = Fraction(rng.randint(-999, 999), 1000)
            y = Fraction(rng.randint(-999, 999), 1000)
            if y < x:
                return (x, y)
    if name == "Lambda_trig":
        cs = pythagorean_cosines()
        while True:
            (c1, s1), (c2, s2) = rng.choice(cs), rng.choice(cs)
            if c2 < c1 and c1 + c2 != 0:
                return (c1, s1, c2, s2)
    if name == "Omega":
        x, y = sample_region("Lambda", rng)
        return (x + y, x * y)
    if name == "Gamma":
        a = mpmath.mpf(rng.randint(1, 998)) / 1000 * mpmath.pi
        b = mpmath.mpf(rng.randint(1, 998)) / 1000 * mpmath.pi
        if a == b:
            b = b / 2
        a, b = min(a, b), max(a, b)
        return (mpmath.expj(a), mpmath.expj(b))
    raise ValueError(name)


def _prop25_map(c1, s1, c2, s2):
    return (c1 * c2 + s1 * s2, c1 * c2 - s1 * s2)


REGION_MAPS = {
    "square_swap": RegionMap("square_swap", "Omega", "Omega'", lambda x, y: (y, x * x)),
    "affine": RegionMap("affine", "Omega", "Omega'", lambda x, y: (x / 2, 1 + x + y)),
    "quadratic": RegionMap("quadratic", "Omega", "Omega", lambda x, y: (2 * y, x * x - 2 * y - 1)),
    "elementary": RegionMap("elementary", "Lambda", "Omega", lambda x, y: (x + y, x * y)),
    "cosine": RegionMap("cosine", "Gamma", "Lambda",
                        lambda z1, z2: (mpmath.re((z1 + 1 / z1) / 2), mpmath.re((z2 + 1 / z2) / 2))),
    "trig_quadratic": RegionMap("trig_quadratic", "Lambda_trig", "Lambda", _prop25_map),
    "product_ratio": RegionMap("product_ratio", "Gamma", "torus", lambda z1, z2: (z1 * z2, z1 / z2)),
}


# ---------------------------------------------------------------------------
# identity checks shared by the propositions


def _max_diff(a, b):
    keys = set(a.terms) | set(b.terms)
    diffs = [abs(a.terms.get(k, 0) - b.terms.get(k, 0)) for k in keys]
    if all(is_exact(d) for d in diffs):
        return max(diffs, default=0)
    return max((to_mp(d) if is_exact(d) else d for d in diffs), default=mpmath.mpf(0))


def _first_witness(a, b):
    for k in sorted(set(a.terms) | set(b.terms)):
        u, v = a.terms.get(k, 0), b.terms.get(k, 0)
        if u != v:
            return {"coefficient": k, "lhs": str(u), "rhs": str(v)}
    return {}


def _compare(label, idx, lhs, rhs, tol):
    if tol is None:
        if lhs != rhs:
            w = _first_witness(lhs, rhs)
            w["index"] = idx
            raise IdentityFailure(f"{label} fails at {idx}", w)
        return 0
    d = _max_diff(lhs, rhs)
    if is_exact(d):
        d = to_mp(d)
    if d > tol:
        w = {"index": idx, "max_diff": mpmath.nstr(d, 5), "tolerance": mpmath.nstr(tol, 5)}
        raise IdentityFailure(f"{label} fails at {idx}", w)
    return d


def _is_zero(v, tol):
    if tol is None:
        return v == 0
    return abs(to_mp(v) if is_exact(v) else v) <= tol


def _pairs(upto):
    """All (n, k) with n >= k >= 0 and n + k <= upto (an int) or (n,k) <= upto (a pair)."""
    if isinstance(upto, int):
        return [(n, k) for s in range(upto + 1) for n in range(s + 1) for k in range(n + 1) if n + k == s]
    return downset(tuple(upto))


def _target_indices(pairs):
    even = {(n + k, n - k) for n, k in pairs}
    odd = {(n + k + 1, n - k) for n, k in pairs}
    return even, odd


def _check_pairs(label, pairs, P, Q, R, transform, anchor_p, anchor_q, odd_factor, odd_const, monic_scale, tol):
    """Core of the two-variable quadratic transformations.

    ``transform(q)`` gives q(map) as a polynomial in the source variables;
    ``odd_factor`` multiplies the odd side; anchors are evaluation functions.
    Monic forms are always checked; ratio forms whenever the anchors are nonzero.
    """
    forms = {"monic": 0, "ratio": 0, "ratio_skipped": []}
    worst = 0
    for n, k in pairs:
        for parity, table, target in (("even", Q, (n + k, n - k)), ("odd", R, (n + k + 1, n - k))):
            if table is None:
                continue
            q = table[(n, k)]
            p = P[target]
            tq = transform(q)
            if parity == "odd":
                tq = tq * odd_factor
            pp = p.to_poly2_like()
            scale = monic_scale(n, k)
            if tol is not None:
                tq, pp, scale = _to_mp_poly(tq), _to_mp_poly(pp), to_mp(scale)
            worst = max(worst, _compare(f"{label} ({parity}, monic)", (n, k), tq * scale, pp, tol))
            forms["monic"] += 1
            if anchor_q is None:
                continue
            aq, ap = anchor_q(q), anchor_p(p)
            if _is_zero(aq, tol) or _is_zero(ap, tol):
                forms["ratio_skipped"].append(((n, k), parity))
                continue
            c = odd_const if parity == "odd" else 1
            if tol is not None:
                aq, ap, c = _as_mp(aq), _as_mp(ap), to_mp(c)
            worst = max(worst, _compare(f"{label} ({parity}, ratio)", (n, k), tq / (c * aq), pp / ap, tol))
            forms["ratio"] += 1
    return forms, worst


def _as_mp(v):
    return to_mp(v) if is_exact(v) else v


def _to_mp_poly(p):
    return type(p)({k: _as_mp(c) for k, c in p.terms.items()})


class _PolyView:
    """Uniform access to plane / lambda / torus polynomials for comparisons."""

    def __init__(self, dp: DominancePoly2):
        self.dp = dp
        self.obj = dp.to_laurent() if dp.basis_kind == "orbit" else dp.to_poly2()

    def to_poly2_like(self):
        return self.obj

    def __call__(self, *args):
        return self.obj(*args)


def _views(table):
    return {k: _PolyView(v) for k, v in table.items()}


def _tol_for(*functionals, tol=None):
    if tol is not None:
        return tol
    if all(L.exact for L in functionals):
        return None
    return mpmath.mpf("1e-18")


# ---------------------------------------------------------------------------
# Proposition-level checks


def verify_prop17(L: MomentFunctional2, upto=(2, 2), tol=None):
    """``q_{n,k}(y, x^2) = p_{n+k,n-k}(x, y)`` and ``x r_{n,k}(y, x^2) = p_{n+k+1,n-k}(x, y)``."""
    if L.coords != "plane" or not L.even_in_x():
        raise HypothesisViolated("Proposition needs a plane functional with w(x, y) = w(-x, y)")
    X, Y = Poly2.x(), Poly2.y()
    Lq = ComposedFunctional(L, Y, X * X)
    Lr = ComposedFunctional(L, Y, X * X, weight=X * X)
    pairs = _pairs(upto)
    even, odd = _target_indices(pairs)
    tol = _tol_for(L, tol=tol)
    P = _views(dominance_gram_schmidt(L, "monomial", indices=sorted(even | odd, key=total_key), tol=tol))
    Q = dominance_gram_schmidt(Lq, "monomial", indices=pairs, tol=tol)
    R = dominance_gram_schmidt(Lr, "monomial", indices=pairs, tol=tol)
    forms, worst = _check_pairs(
        "square-swap", pairs, P, Q, R,
        transform=lambda q: q.to_poly2().compose(Y, X * X),
        anchor_p=None, anchor_q=None, odd_factor=X, odd_const=1,
        monic_scale=lambda n, k: 1, tol=tol)
    return {"check": "prop17", "status": "pass", "pairs": len(pairs), "forms": forms, "max_diff": _num(worst)}


def prop20_functionals(L: MomentFunctional2):
    """The two derived functionals on Omega: pushforwards along (2y, x^2-2y-1) of L and x^2 L."""
    X, Y = Poly2.x(), Poly2.y()
    mapX, mapY = Y * 2, X * X - Y * 2 - 1
    return ComposedFunctional(L, mapX, mapY), ComposedFunctional(L, mapX, mapY, weight=X * X)


def verify_prop20(L: MomentFunctional2, Lq: MomentFunctional2 = None, Lr: MomentFunctional2 = None, upto=(2, 2),
                  tol=None, label="quadratic", check_hypothesis=True):
    """Both identities of the Omega quadratic transformation, monic and anchored at (2, 1)."""
    if L.coords != "plane":
        raise HypothesisViolated("needs a plane functional on Omega")
    if check_hypothesis and not L.even_in_x():
        raise HypothesisViolated("weight is not even in x")
    if Lq is None or Lr is None:
        dq, dr = prop20_functionals(L)
        Lq, Lr = Lq or dq, Lr or dr
    X, Y = Poly2.x(), Poly2.y()
    mapX, mapY = Y * 2, X * X - Y * 2 - 1
    pairs = _pairs(upto)
    even, odd = _target_indices(pairs)
    tol = _tol_for(L, Lq, Lr, tol=tol)
    gs_tol = None if tol is None else mpmath.mpf(2) ** (-mpmath.mp.prec // 2)
    P = _views(dominance_gram_schmidt(L, "monomial", indices=sorted(even | odd, key=total_key), tol=gs_tol))
    Q = dominance_gram_schmidt(Lq, "monomial", indices=pairs, tol=gs_tol)
    R = dominance_gram_schmidt(Lr, "monomial", indices=pairs, tol=gs_tol)
    forms, worst = _check_pairs(
        label, pairs, P, Q, R,
        transform=lambda q: q.to_poly2().compose(mapX, mapY),
        anchor_p=lambda p: p(2, 1), anchor_q=lambda q: q(2, 1), odd_factor=X, odd_const=2,
        monic_scale=lambda n, k: Fraction(1, 2 ** (n - k)), tol=tol)
    return {"check": label, "status": "pass", "pairs": len(pairs), "forms": forms, "max_diff": _num(worst),
            "bound": _num(max(L.bound, Lq.bound, Lr.bound))}


def prop25_functionals(L: MomentFunctional2):
    """Derived lambda functionals: Q(X, Y) at X + Y = 2xy, XY = x^2 + y^2 - 1, and (x+y)^2 times it."""
    X, Y = Poly2.x(), Poly2.y()
    base = PlaneFromLambda(L)  # functional in (xi, eta) = (x+y, xy)
    # xi' = 2 eta, eta' = xi^2 - 2 eta - 1 in the (xi, eta) coordinates
    q = ComposedFunctional(base, Y * 2, X * X - Y * 2 - 1)
    r = ComposedFunctional(base, Y * 2, X * X - Y * 2 - 1, weight=X * X)
    return LambdaFromPlane(q), LambdaFromPlane(r)


def _elementary(p: DominancePoly2) -> Poly2:
    return elementary_from_sympoly(p).to_poly2()


def verify_prop25(L: MomentFunctional2, upto=(2, 2), tol=None, trig_points: int = 12):
    """Symmetric-polynomial form on Lambda, checked as polynomials in (x, y) and
    at rational points (cos t1, cos t2) in trigonometric form."""
    if L.coords != "lambda":
        raise HypothesisViolated("needs a lambda functional")
    if not L.reflection_invariant():
        raise HypothesisViolated("W(x, y) != W(-y, -x)")
    Lq, Lr = prop25_functionals(L)
    X, Y = Poly2.x(), Poly2.y()
    pairs = _pairs(upto)
    even, odd = _target_indices(pairs)
    tol = _tol_for(L, tol=tol)
    P = _views(dominance_gram_schmidt(L, "symmetric", indices=sorted(even | odd, key=total_key), tol=tol))
    Q = dominance_gram_schmidt(Lq, "symmetric", indices=pairs, tol=tol)
    R = dominance_gram_schmidt(Lr, "symmetric", indices=pairs, tol=tol)
    sX, sY = X * Y * 2, X * X + Y * Y - 1
    forms, worst = _check_pairs(
        "trig-quadratic", pairs, P, Q, R,
        transform=lambda q: _elementary(q).compose(sX, sY),
        anchor_p=lambda p: p(1, 1), anchor_q=lambda q: q(1, 1), odd_factor=X + Y, odd_const=2,
        monic_scale=lambda n, k: Fraction(1, 2 ** (n - k)), tol=tol)
    # trigonometric restatement at rational points
    pts = [pt for pt in _trig_grid()][:trig_points]
    checked = 0
    for n, k in pairs:
        for parity, table, target in (("even", Q, (n + k, n - k)), ("odd", R, (n + k + 1, n - k))):
            q, p = table[(n, k)], P[target]
            aq, ap = q(1, 1), p(1, 1)
            if _is_zero(aq, tol) or _is_zero(ap, tol):
                continue
            for c1, s1, c2, s2 in pts:
                lhs = q(*_prop25_map(c1, s1, c2, s2)) / aq
                if parity == "odd":
                    lhs = lhs * (c1 + c2) / 2
                rhs = p(c1, c2) / ap
                if not (lhs == rhs if tol is None else abs(lhs - rhs) <= tol):
                    raise IdentityFailure(f"trigonometric form fails at {(n, k)}",
                                          {"index": (n, k), "parity": parity, "point": (str(c1), str(c2)),
                                           "lhs": str(lhs), "rhs": str(rhs)})
                checked += 1
    forms["trig_points"] = checked
    return {"check": "prop25", "status": "pass", "pairs": len(pairs), "forms": forms, "max_diff": _num(worst)}


def _trig_grid():
    cs = pythagorean_cosines()
    for c1, s1 in cs:
        for c2, s2 in cs:
            if c2 < c1:
                yield (c1, s1, c2, s2)


def laurent_functionals(L: MomentFunctional2):
    """Torus functionals for q and r: L pulled back along (z1 z2, z1/z2), the second
    with (1+w1)(1+1/w1)(1+w2)(1+1/w2) inserted."""
    one = Laurent2({(0, 0): 1})
    w = Laurent2({(0, 0): 2, (1, 0): 1, (-1, 0): 1}) * Laurent2({(0, 0): 2, (0, 1): 1, (0, -1): 1})
    return TorusProductRatio(L, one), TorusProductRatio(L, w.substitute_product_ratio())


Z_SUM = Laurent2({(1, 0): 1, (-1, 0): 1, (0, 1): 1, (0, -1): 1})


def verify_laurent_prop(L: MomentFunctional2, upto=(2, 2), tol=None, printed_denominator=False):
    """W2-invariant Laurent form on the torus.

    With ``printed_denominator`` the even identity is divided by p_{n,k}(1,1)
    instead of p_{n+k,n-k}(1,1); that form is wrong and fails.
    """
    if L.coords != "torus":
        raise HypothesisViolated("needs a torus functional")
    if not L.reflection_invariant():
        raise HypothesisViolated("Delta(z1, z2) != Delta(-1/z2, -1/z1)")
    Lq, Lr = laurent_functionals(L)
    pairs = _pairs(upto)
    even, odd = _target_indices(pairs)
    tol = _tol_for(L, tol=tol)
    gs_tol = None if tol is None else mpmath.mpf(2) ** (-mpmath.mp.prec // 2)
    P = _views(dominance_gram_schmidt(L, "orbit", indices=sorted(even | odd | set(pairs), key=total_key), tol=gs_tol))
    Q = dominance_gram_schmidt(Lq, "orbit", indices=pairs, tol=gs_tol)
    R = dominance_gram_schmidt(Lr, "orbit", indices=pairs, tol=gs_tol)
    if printed_denominator:
        forms = {"ratio": 0}
        for n, k in pairs:
            q, p, pnk = _PolyView(Q[(n, k)]), P[(n + k, n - k)], P[(n, k)]
            _compare("Laurent (even, printed)", (n, k), q.obj.substitute_product_ratio() / q(1, 1),
                     p.obj / pnk(1, 1), tol)
            forms["ratio"] += 1
        return {"check": "laurent-printed", "status": "pass", "pairs": len(pairs), "forms": forms}
    forms, worst = _check_pairs(
        "Laurent", pairs, P, Q, R,
        transform=lambda q: q.to_laurent().substitute_product_ratio(),
        anchor_p=lambda p: p(1, 1), anchor_q=lambda q: q(1, 1), odd_factor=Z_SUM, odd_const=4,
        monic_scale=lambda n, k: 1, tol=tol)
    return {"check": "laurent", "status": "pass", "pairs": len(pairs), "forms": forms, "max_diff": _num(worst)}


def _num(v):
    if v is None:
        return 0
    if is_exact(v):
        return str(v)
    return float(v)


# ---------------------------------------------------------------------------
# BC2 Jacobi polynomials


def bc2_functional(alpha, beta, gamma, engine="exact", **kw):
    if engine == "exact":
        return BC2Exact(alpha, beta, gamma)
    if engine == "quadrature":
        return BC2Quadrature(alpha, beta, gamma, **kw)
    raise ValueError(f"unknown engine {engine!r}")


def bc2_jacobi(alpha, beta, gamma, upto=(2, 2), engine="exact", route="lambda", **kw):
    """Monic BC2 Jacobi polynomials p_{n,k}(xi, eta) on Omega for all (n, k) <= upto.

    ``route="lambda"`` orthogonalizes symmetric polynomials on Lambda and
    converts back to (xi, eta); ``route="omega"`` works on Omega directly.
    """
    if route not in ("omega", "lambda"):
        raise ValueError(route)
    with mpmath.workprec(kw.get("precision", DEFAULT_PREC)):
        L = bc2_functional(alpha, beta, gamma, engine, **kw)
        tol = None if L.exact else mpmath.mpf(2) ** (-mpmath.mp.prec // 2)
        if route == "omega":
            return dominance_gram_schmidt(L, "monomial", upto=upto, tol=tol)
        sym = dominance_gram_schmidt(LambdaFromPlane(L), "symmetric", upto=upto, tol=tol)
        return {idx: elementary_from_sympoly(p) for idx, p in sym.items()}


def full_orthogonality(L: MomentFunctional2, table):
    """Largest |<p_a, p_b>| over pairs of distinct indices, related or not."""
    worst = 0
    idxs = sorted(table, key=total_key)
    for i, a in enumerate(idxs):
        for b in idxs[i + 1:]:
            pa, pb = table[a], table[b]
            prod = (pa.to_laurent() * pb.to_laurent()) if pa.basis_kind == "orbit" else pa.to_poly2() * pb.to_poly2()
            v = L.apply(prod)
            worst = max(worst, abs(v))
    return worst


def verify_bc2_quadratic(alpha, gamma, upto=5, engine="exact", tol=None, **kw):
    """Quadratic transformation between p^{alpha,alpha,gamma} and p^{gamma,-+1/2,alpha}."""
    with mpmath.workprec(kw.get("precision", DEFAULT_PREC)):
        L = bc2_functional(alpha, alpha, gamma, engine, **kw)
        Lq = bc2_functional(gamma, Fraction(-1, 2), alpha, engine, **kw)
        Lr = bc2_functional(gamma, Fraction(1, 2), alpha, engine, **kw)
        rep = verify_prop20(L, Lq, Lr, upto=upto, tol=tol, label="BC2-quadratic")
    rep.update({"alpha": str(alpha), "gamma": str(gamma), "engine": engine})
    return rep


# ---------------------------------------------------------------------------
# Koornwinder polynomials


def koornwinder_functional(q, t, a, b, c, d, K=None, precision=DEFAULT_PREC, M=256):
    return KoornwinderTorus(q, t, a, b, c, d, K=K, precision=precision, M=M)


def koornwinder2(q, t, a, b, c, d, upto=(2, 2), K=None, precision=DEFAULT_PREC, M=256, indices=None):
    """Monic W2-invariant Koornwinder polynomials in the orbit basis, and the functional used."""
    with mpmath.workprec(precision):
        L = koornwinder_functional(q, t, a, b, c, d, K=K, precision=precision, M=M)
        table = dominance_gram_schmidt(L, "orbit", upto=upto, indices=indices,
                                       tol=mpmath.mpf(2) ** (-precision // 2))
    return table, L


def verify_koornwinder_weight(params, sample_points=None, K=200, prec=DEFAULT_PREC):
    """``Delta(z; q, t; a, -a, p, -p) = Delta(z1 z2, z1/z2; q^2, a^2; t, qt, -1, -q)`` at torus points."""
    p, t, a = params["p"], params["t"], params["a"]
    with mpmath.workprec(prec):
        pm, tm, am = to_mp(p), to_mp(t), to_mp(a)
        q = pm * pm
        pts = sample_points if sample_points is not None else default_torus_points()
        worst = 0
        for z1, z2 in pts:
            L, bl = koornwinder_delta(z1, z2, q, tm, (am, -am, pm, -pm), K)
            R, br = koornwinder_delta(z1 * z2, z1 / z2, q * q, am * am, (tm, q * tm, -1, -q), K)
            scale = max(abs(L), abs(R))
            allowed = 2 * (bl + br) * scale + mpmath.mpf(2) ** (-prec + 16) * (1 + scale)
            diff = abs(L - R)
            if diff > allowed:
                raise BoundExceeded(f"Koornwinder_pair: |difference| {mpmath.nstr(diff, 5)} > bound {mpmath.nstr(allowed, 5)}")
            worst = max(worst, diff)
        return {"which": "Koornwinder_pair", "status": "pass", "points": len(pts), "max_diff": float(worst), "K": K}


def default_torus_points(count=16):
    """Pairs (e^{i pi (2j+1)/17}, e^{i pi (4j+1)/19}); no product or ratio equals -1."""
    return [(mpmath.expjpi(mpmath.mpf(2 * j + 1) / 17), mpmath.expjpi(mpmath.mpf(4 * j + 1) / 19)) for j in range(count)]


def verify_koornwinder_quadratic(p, t, a, upto=4, K=None, precision=DEFAULT_PREC, M=256, tol=mpmath.mpf("1e-18"),
                                 precheck=True):
    """Even and odd quadratic transformations of two-variable Koornwinder polynomials.

    Left side: (q, t; a, -a, p, -p) with q = p^2.  Right side in (z1 z2, z1/z2):
    (q^2, a^2; t, q t, -1, -q) for the even case and (q^2, a^2; t, q t, -q, -q^2)
    with the factor z1 + z2 + 1/z1 + 1/z2 for the odd case.  Only n + k even.
    """
    p, t, a = _frac(p), _frac(t), _frac(a)
    q = p * p
    report = {"check": "koornwinder-quadratic", "p": str(p), "t": str(t), "a": str(a)}
    with mpmath.workprec(precision):
        if precheck:
            report["weight"] = verify_koornwinder_weight({"p": p, "t": t, "a": a}, prec=precision)
        pairs = [(n, k) for n, k in _pairs(upto) if (n + k) % 2 == 0]
        half = [((n + k) // 2, (n - k) // 2) for n, k in pairs]
        lhs_idx = sorted({(n, k) for n, k in pairs} | {(n + 1, k) for n, k in pairs}, key=total_key)
        P, L0 = koornwinder2(q, t, a, -a, p, -p, indices=lhs_idx, K=K, precision=precision, M=M)
        Qe, Le = koornwinder2(q * q, a * a, t, q * t, -1, -q, indices=half, K=K, precision=precision, M=M)
        Qo, Lo = koornwinder2(q * q, a * a, t, q * t, -q, -q * q, indices=half, K=K, precision=precision, M=M)
        worst = mpmath.mpf(0)
        for (n, k), h in zip(pairs, half):
            lhs = P[(n, k)].to_laurent()
            rhs = Qe[h].to_laurent().substitute_product_ratio()
            worst = max(worst, _compare("Koornwinder (even)", (n, k), lhs, rhs, tol))
            lhs = P[(n + 1, k)].to_laurent()
            rhs = Z_SUM * Qo[h].to_laurent().substitute_product_ratio()
            worst = max(worst, _compare("Koornwinder (odd)", (n, k), lhs, rhs, tol))
        bounds = {name: float(L.combined_bound) for name, L in (("lhs", L0), ("even", Le), ("odd", Lo))}
        report.update({"status": "pass", "pairs": pairs, "max_diff": float(worst), "bounds": bounds,
                       "K": {"lhs": L0.K, "even": Le.K, "odd": Lo.K}, "M": M})
    return report


def random_even_functional(rng, pairs=8):
    """Discrete plane functional symmetric under ``x -> -x``."""
    pts, ws = [], []
    for _ in range(pairs):
        x = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        y = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        w = Fraction(rng.randint(1, 9))
        pts += [(x, y), (-x, y)]
        ws += [w, w]
    return DiscreteFinite2(pts, ws)


def random_lambda_functional(rng, pairs=10):
    """Discrete functional on Lambda at Pythagorean cosines, invariant under ``(x, y) -> (-y, -x)``."""
    cs = pythagorean_cosines()
    pts, ws = [], []
    for _ in range(pairs):
        (c1, _), (c2, _) = rng.sample(cs, 2)
        x, y = max(c1, c2), min(c1, c2)
        w = Fraction(rng.randint(1, 9))
        pts += [(x, y), (-y, -x)]
        ws += [w, w]
    return DiscreteFinite2(pts, ws, coords="lambda")


__all__ = [
    "MomentFunctional2", "DiscreteFinite2", "ComposedFunctional", "LambdaFromPlane", "PlaneFromLambda",
    "TorusFromLambda", "TorusProductRatio", "BC2Exact", "BC2Quadrature", "KoornwinderTorus",
    "RegionMap", "REGION_MAPS", "dominance_gram_schmidt", "verify_prop17", "verify_prop20",
    "verify_prop25", "verify_laurent_prop", "bc2_jacobi", "verify_bc2_quadratic", "koornwinder2",
    "verify_koornwinder_quadratic", "verify_koornwinder_weight", "full_orthogonality",
    "prop20_functionals", "prop25_functionals", "laurent_functionals", "pythagorean_cosines",
    "default_torus_points", "gauss_jacobi01", "random_even_functional", "random_lambda_functional",
]
