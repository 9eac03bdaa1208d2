"""Normalized moment functionals and orthogonality checks.

Every functional is normalized so that ``moment(0) == 1``; transcendental
masses (Beta integrals, Askey--Wilson constants) never need to be known.

Kinds
-----
``JacobiBetaRatio``   (1-x)^alpha (1+x)^beta on [-1, 1], exact moments
``DiscreteFinite``    finitely many nodes with exact weights
``QIntegral01``       truncated Jackson integral on (0, 1]
``CircleTruncated``   Askey--Wilson weight in x = cos(theta), truncated products
``Pushforward``       Remark-41 style pushforward of an even functional
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import isqrt

import mpmath

from .errors import NotEven, OrthogonalityFailure, ParameterOutOfRange, PositivityViolated
from .linalg import SingularSystem, solve
from .poly import Polynomial1
from .scalar import DEFAULT_PREC, is_exact, pochhammer, q_pochhammer, q_pochhammer_inf, simplify, to_mp


class MomentFunctional:
    """Base class: subclasses implement ``_raw(j)``; results are cached."""

    kind = "abstract"
    bound = 0  # truncation bound on each normalized moment

    def __init__(self):
        self._cache = {}
        self._lock = threading.Lock()

    def _raw(self, j):
        raise NotImplementedError

    def moment(self, j: int):
        try:
            return self._cache[j]
        except KeyError:
            pass
        val = self._raw(j)
        with self._lock:
            self._cache.setdefault(j, val)
        return self._cache[j]

    def pair(self, p: Polynomial1, r: Polynomial1):
        """``L(p r)`` through the moments."""
        prod = p * r
        acc = Fraction(0) if all(is_exact(c) for c in prod.coeffs) else 0
        for i, c in enumerate(prod.coeffs):
            acc = acc + c * self.moment(i)
        return simplify(acc) if is_exact(acc) else acc

    def apply(self, p: Polynomial1):
        return self.pair(p, Polynomial1([1]))

    @property
    def exact(self):
        return self.bound == 0


def jacobi_moment(j: int, alpha, beta):
    """Normalized ``int x^j (1-x)^alpha (1+x)^beta dx`` over [-1, 1].

    With ``x = 2T - 1`` and ``T ~ Beta(beta+1, alpha+1)``,
    ``E[T^i] = (beta+1)_i / (alpha+beta+2)_i``.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha <= -1 or beta <= -1:
        raise ParameterOutOfRange(f"jacobi_moment needs alpha, beta > -1, got {alpha}, {beta}")
    total = Fraction(0)
    binom = 1
    for i in range(j + 1):
        # (2T - 1)^j = sum_i C(j,i) 2^i T^i (-1)^(j-i)
        ti = pochhammer(beta + 1, i) / pochhammer(alpha + beta + 2, i)
        total += binom * 2**i * (-1) ** (j - i) * ti
        binom = binom * (j - i) // (i + 1)
    return total


class JacobiBetaRatio(MomentFunctional):
    kind = "JacobiBetaRatio"

    def __init__(self, alpha, beta):
        super().__init__()
        self.alpha, self.beta = Fraction(alpha), Fraction(beta)
        if self.alpha <= -1 or self.beta <= -1:
            raise ParameterOutOfRange("JacobiBetaRatio needs alpha, beta > -1")

    def _raw(self, j):
        return jacobi_moment(j, self.alpha, self.beta)


class DiscreteFinite(MomentFunctional):
    kind = "DiscreteFinite"

    def __init__(self, nodes, weights, claim_positive=False):
        super().__init__()
        if len(nodes) != len(weights):
            raise ValueError("nodes and weights differ in length")
        total = sum(weights)
        if total == 0:
            raise ValueError("weights sum to zero")
        self.nodes = [simplify(x) for x in nodes]
        self.weights = [simplify(w / total) for w in weights]
        self.positive = all(w > 0 for w in self.weights)
        if claim_positive and not self.positive:
            raise PositivityViolated("claimed positive weights are not all positive")

    def _raw(self, j):
        return simplify(sum(w * x**j for x, w in zip(self.nodes, self.weights)))

    def pair(self, p, r):
        return simplify(sum(w * p(x) * r(x) for x, w in zip(self.nodes, self.weights)))

    def is_even(self):
        pts = {}
        for x, w in zip(self.nodes, self.weights):
            pts[x] = pts.get(x, 0) + w
        return all(pts.get(-x, 0) == w for x, w in pts.items())


def exact_sqrt(x):
    """Square root of a perfect-square rational, else None."""
    x = Fraction(x)
    if x < 0:
        return None
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def jackson_integral(f, q, K: int, sup=1):
    """``(1-q) sum_{k<K} f(q^k) q^k`` with tail bound ``sup * q^K``.

    ``sup`` must bound ``|f|`` on the nodes beyond the truncation.
    """
    q = Fraction(q)
    total = Fraction(0)
    qk = Fraction(1)
    for _ in range(K):
        total += f(qk) * qk
        qk *= q
    return (1 - q) * total, abs(sup) * qk


class QIntegral01(MomentFunctional):
    """Truncated Jackson-integral functional ``p -> int_0^1 p(x) w(x) d_q x``."""

    kind = "QIntegral01"

    def __init__(self, weight, q, K: int, sup=1):
        super().__init__()
        if K < 1:
            raise ValueError("K must be >= 1")
        self.weight, self.q, self.K, self.sup = weight, Fraction(q), K, sup
        self.mass, mass_bound = jackson_integral(weight, self.q, K, sup)
        # relative bound on normalized moments (moments of x^j are bounded by the j=0 tail)
        self.bound = 2 * mass_bound / (abs(self.mass) - mass_bound) if abs(self.mass) > mass_bound else float("inf")

    def _raw(self, j):
        val, _ = jackson_integral(lambda x: x**j * self.weight(x), self.q, self.K, self.sup)
        return val / self.mass


def qintegral_functional(weight, q, K: int, sup=1):
    return QIntegral01(weight, q, K, sup)


def qintegral_display_check(p: Polynomial1, v, q, K: int = 120, sup=1):
    """Compare ``int_0^1 p(x) x^{-1/2} v(x) d_{q^2} x`` with ``(1+q) int_0^1 p(x^2) v(x^2) d_q x``.

    Both Jackson sums are truncated at K terms; the difference and each side's
    distance to its 2K value are returned together with the combined tail bound.
    ``sup`` bounds ``|p v|`` on [0, 1].
    """
    q = Fraction(q)
    q2 = q * q

    def lhs_f(x):
        return p(x) * v(x) / exact_sqrt(x)

    def rhs_f(x):
        return p(x * x) * v(x * x)

    def sides(k):
        # x^{-1/2} v(x) at x = q^{2k} contributes q^{-k}, so the tail is sup * q^K
        L, _ = jackson_integral(lhs_f, q2, k)
        R, _ = jackson_integral(rhs_f, q, k)
        return L, (1 + q) * R

    L1, R1 = sides(K)
    L2, R2 = sides(2 * K)
    bound = 2 * abs(sup) * (1 + q) * q**K / (1 - q)
    return {
        "lhs": L1,
        "rhs": R1,
        "difference": abs(L1 - R1),
        "lhs_tail": abs(L2 - L1),
        "rhs_tail": abs(R2 - R1),
        "bound": bound,
        "status": "pass" if abs(L1 - R1) <= bound and abs(L2 - L1) <= bound and abs(R2 - R1) <= bound else "fail",
    }


class CircleTruncated(MomentFunctional):
    """Askey--Wilson weight in ``x = cos(theta)``, normalized.

    ``w(theta) = |(e^{2i theta}; q)_inf / prod_a (a e^{i theta}; q)_inf|^2``
    with products truncated at K factors; the theta integral is done by the
    trapezoid rule on M points of the full circle, exact for trigonometric
    polynomials of degree < M, and ``bound`` combines the product truncation
    bound with the difference between M and 2M point rules.
    """

    kind = "CircleTruncated"

    def __init__(self, a, b, c, d, q, K: int = 120, M: int = 128, prec: int = DEFAULT_PREC):
        super().__init__()
        self.params = (a, b, c, d)
        self.q, self.K, self.M, self.prec = q, K, M, prec
        with mpmath.workprec(prec):
            self._xs, self._ws, trunc = self._rule(M)
            xs2, ws2, _ = self._rule(2 * M)
            m1 = [self._mom(self._xs, self._ws, j) for j in range(8)]
            m2 = [self._mom(xs2, ws2, j) for j in range(8)]
            self.bound = +(max(abs(u - v) for u, v in zip(m1, m2)) + 4 * trunc)

    def _rule(self, M):
        qm = to_mp(self.q)
        xs, ws = [], []
        trunc = mpmath.mpf(0)
        for j in range(M):
            th = 2 * mpmath.pi * (j + mpmath.mpf(1) / 2) / M
            z = mpmath.expj(th)
            num, bnum = _qpoch_inf_mp(z * z, qm, self.K)
            den = mpmath.mpf(1)
            bd = mpmath.mpf(0)
            for a in self.params:
                val, bb = _qpoch_inf_mp(to_mp(a) * z, qm, self.K)
                den *= val
                bd += bb
            w = abs(num / den) ** 2
            trunc = max(trunc, 2 * (bnum + bd))
            xs.append(mpmath.cos(th))
            ws.append(w)
        tot = sum(ws)
        return xs, [w / tot for w in ws], trunc

    @staticmethod
    def _mom(xs, ws, j):
        return sum(w * x**j for x, w in zip(xs, ws))

    def _raw(self, j):
        with mpmath.workprec(self.prec):
            return self._mom(self._xs, self._ws, j)


def _qpoch_inf_mp(a, q, K):
    val = mpmath.mpf(1)
    qk = mpmath.mpf(1)
    for _ in range(K):
        val *= 1 - a * qk
        qk *= q
    return val, 2 * abs(a) * abs(q) ** K / (1 - abs(q))


class Pushforward(MomentFunctional):
    """``nu_j = mu_{2j+2s} / mu_{2s}`` for an even functional ``mu``.

    ``shift=0`` is the pushforward under ``x -> x^2``; ``shift=1`` is the same
    measure multiplied by the new variable (the odd-part measure).
    """

    kind = "Pushforward"

    def __init__(self, base: MomentFunctional, shift: int = 0):
        super().__init__()
        self.base, self.shift = base, shift
        self.bound = base.bound
        self._norm = base.moment(2 * shift)
        if isinstance(base, DiscreteFinite) and not base.is_even():
            raise NotEven("discrete functional is not symmetric under x -> -x")
        if self._norm == 0:
            raise ValueError("vanishing normalization moment")

    def _raw(self, j):
        odd = self.base.moment(2 * j + 1)
        if (odd != 0) if self.base.exact else abs(odd) > 10 * self.base.bound + mpmath.mpf(2) ** (-200):
            raise NotEven(f"odd moment {2 * j + 1} does not vanish")
        return self.base.moment(2 * (j + self.shift)) / self._norm


def pushforward_split(mu: MomentFunctional):
    """Return ``(nu, nu1)``: moments ``mu_{2j}`` and ``mu_{2j+2}/mu_2``."""
    if mu.moment(1) != 0 and mu.exact:
        raise NotEven("first moment does not vanish")
    return Pushforward(mu, 0), Pushforward(mu, 1)


# ---------------------------------------------------------------------------
# orthogonal polynomials from moments


def monic_orthogonal_polynomials(L: MomentFunctional, n_max: int, tol=None):
    """Monic OPs ``p_0..p_{n_max}`` by solving Hankel systems."""
    out = [Polynomial1([1])]
    for n in range(1, n_max + 1):
        A = [[L.moment(i + j) for j in range(n)] for i in range(n)]
        b = [-L.moment(i + n) for i in range(n)]
        try:
            c = solve(A, b, tol)
        except SingularSystem as e:
            raise OrthogonalityFailure(n, n, "singular Hankel matrix") from e
        out.append(Polynomial1(list(c) + [1]))
    return out


def _as_generator(generator):
    if callable(generator) and not hasattr(generator, "family_id"):
        return generator
    from .families1 import make_polynomial

    return lambda n: make_polynomial(generator, n)


def orthogonality_check(generator, functional: MomentFunctional, n_max: int, mode="exact", tau=None):
    """Check ``<p_m, p_n> = 0`` for ``m < n <= n_max``.

    ``generator`` is a FamilySpec or a callable ``n -> Polynomial1``.  In
    ``"tolerance"`` mode the test is ``|<p_m,p_n>| <= tau * ||p_m|| ||p_n||``.
    """
    gen = _as_generator(generator)
    polys = [gen(n) for n in range(n_max + 1)]
    norms = [functional.pair(p, p) for p in polys]
    worst = 0
    for n in range(n_max + 1):
        for m in range(n):
            v = functional.pair(polys[m], polys[n])
            if mode == "exact":
                if v != 0:
                    raise OrthogonalityFailure(m, n, v)
            else:
                scale = mpmath.sqrt(abs(to_mp(norms[m])) * abs(to_mp(norms[n])))
                rel = abs(to_mp(v)) / scale
                worst = max(worst, rel)
                if rel > tau:
                    raise OrthogonalityFailure(m, n, v)
    return {"status": "pass", "n_max": n_max, "norms": norms, "worst": worst}


# ---------------------------------------------------------------------------
# q-Racah weights


def qracah_symmetric_functional(N, alpha, q, space="y"):
    """Weights of the symmetric q-Racah lattice.

    Nodes ``y_x = q^{-x-N-1/2} - q^{x-N-1/2}`` for ``x = -N-1/2, ..., N+1/2`` with weights
    ``(q^x + q^{-x}) (alpha^2 q^2; q^2)_{x+N+1/2} (alpha^2 q^2; q^2)_{-x+N+1/2}
    / ((q^2; q^2)_{x+N+1/2} (q^2; q^2)_{-x+N+1/2})``.

    When x runs over half-integers, ``q^x + q^{-x} = q^{1/2} (q^{x-1/2} + q^{-x-1/2})``
    and the common factor ``q^{1/2}`` drops out after normalization.

    ``space="Y"`` returns the ``same-weights`` functional on the squared nodes
    ``Y_x = y_x^2 + 2 q^{-2N-1}`` for ``x <= 0``.
    """
    N, alpha, q = Fraction(N), Fraction(alpha), Fraction(q)
    if (2 * N).denominator != 1 or N <= 0:
        raise ValueError("N must be a positive half-integer multiple")
    M = int(2 * N + 1)  # k = x + N + 1/2 runs over 0..M
    q2 = q * q
    half = (N + Fraction(1, 2)).denominator == 2  # x half-integer
    nodes, weights = [], []
    for k in range(M + 1):
        x = k - N - Fraction(1, 2)
        e = x - Fraction(1, 2) if half else x
        qx = q ** int(e) + q ** int(-e - 1) if half else q ** int(e) + q ** int(-e)
        w = qx * q_pochhammer(alpha * alpha * q2, q2, k) * q_pochhammer(alpha * alpha * q2, q2, M - k)
        w = w / (q_pochhammer(q2, q2, k) * q_pochhammer(q2, q2, M - k))
        y = q ** (-k) - q ** (k - M)
        nodes.append(y)
        weights.append(w)
    if space == "Y":
        shift = 2 * q ** (-M)
        pts = [(y * y + shift, w) for y, w, k in zip(nodes, weights, range(M + 1)) if 2 * k <= M]
        return DiscreteFinite([p for p, _ in pts], [w for _, w in pts])
    return DiscreteFinite(nodes, weights)


def qracah47_weights(N: int, gamma, q):
    """``w_x = q^{(2N+1)x} (1 + q^{2x+1} gamma)/(1 + q gamma) (q^{-2N}, q^2 gamma^2; q^2)_x / (q^2, q^{2N+4} gamma^2; q^2)_x``."""
    q, gamma = Fraction(q), Fraction(gamma)
    q2 = q * q
    out = []
    for x in range(N + 1):
        w = q ** ((2 * N + 1) * x) * (1 + q ** (2 * x + 1) * gamma) / (1 + q * gamma)
        w *= q_pochhammer(q ** (-2 * N), q2, x) * q_pochhammer(q2 * gamma * gamma, q2, x)
        w /= q_pochhammer(q2, q2, x) * q_pochhammer(q ** (2 * N + 4) * gamma * gamma, q2, x)
        out.append(w)
    return out


def discrete_qracah_functional(N, q, alpha=None, gamma=None, variant="56", space="y", claim_positive=False):
    """Discrete q-Racah functional.

    ``variant="56"``  symmetric lattice of :func:`qracah_symmetric_functional`
                      (positive if -1 < q alpha < 1)
    ``variant="47"``  nodes ``+-(q^{-x} - gamma q^{x+1})`` (``space="y"``) or
                      ``q^{-2x} + gamma^2 q^{2x+2}`` (``space="Y"``), x = 0..N, with
                      weights ``w_x`` (positive if q^{-N} < gamma < q^{-N-2})
    """
    q = Fraction(q)
    if variant == "56":
        f = qracah_symmetric_functional(N, alpha, q, space)
        if claim_positive and not f.positive:
            raise PositivityViolated("symmetric q-Racah weights not positive")
        return f
    N = int(N)
    gamma = Fraction(gamma)
    w = qracah47_weights(N, gamma, q)
    if space == "Y":
        f = DiscreteFinite([q ** (-2 * x) + gamma * gamma * q ** (2 * x + 2) for x in range(N + 1)], w)
    else:
        ys = [q ** (-x) - gamma * q ** (x + 1) for x in range(N + 1)]
        f = DiscreteFinite(ys + [-y for y in ys], w + w)
    if claim_positive and not f.positive:
        raise PositivityViolated("q-Racah weights not positive for this gamma")
    return f


# ---------------------------------------------------------------------------
# even measures and their splits


def random_even_measure(rng, max_nodes=12):
    """Even discrete measure with at most ``max_nodes`` nodes and rational weights."""
    with_zero = rng.random() < 0.5
    half = rng.randint(1, (max_nodes - with_zero) // 2)
    xs = set()
    while len(xs) < half:
        xs.add(Fraction(rng.randint(1, 40), rng.randint(1, 9)))
    nodes, weights = [], []
    for x in sorted(xs):
        w = Fraction(rng.randint(1, 20), rng.randint(1, 7))
        nodes += [x, -x]
        weights += [w, w]
    if with_zero:
        nodes.append(Fraction(0))
        weights.append(Fraction(rng.randint(1, 20), rng.randint(1, 7)))
    return DiscreteFinite(nodes, weights)


def verify_split_master(mu: MomentFunctional, n_max=5):
    """``p_2n(x) = P_n(x^2)`` and ``p_2n+1(x) = x Q_n(x^2)`` for the monic OPs.

    ``P`` and ``Q`` are the monic OPs of the two pushforward functionals; the
    check stops where the measure runs out of support.
    """
    nodes = len(set(mu.nodes)) if isinstance(mu, DiscreteFinite) else None
    top = 2 * n_max + 1 if nodes is None else min(2 * n_max + 1, nodes - 1)
    p = monic_orthogonal_polynomials(mu, top)
    nu, nu1 = pushforward_split(mu)
    P = monic_orthogonal_polynomials(nu, top // 2)
    Q = monic_orthogonal_polynomials(nu1, (top - 1) // 2) if top >= 1 else []
    x = Polynomial1([0, 1])
    sq = Polynomial1([0, 0, 1])
    for n in range(top + 1):
        want = P[n // 2].compose(sq) if n % 2 == 0 else x * Q[n // 2].compose(sq)
        if p[n] != want:
            raise OrthogonalityFailure(n, n, "split mismatch")
    return {"status": "pass", "degrees": top + 1}
