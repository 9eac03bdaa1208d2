"""Polynomial containers and the structural maps between them.

``Polynomial1``   dense univariate polynomial, ``coeffs[i]`` multiplies ``x**i``.
``SymLaurent1``   symmetric Laurent polynomial; ``coeffs[0]`` is the constant,
                  ``coeffs[k]`` (k >= 1) multiplies ``z**k + z**-k``.
``Poly2``         sparse bivariate polynomial ``{(i, j): c}`` for ``x**i y**j``.
``Laurent2``      sparse bivariate Laurent polynomial ``{(a, b): c}``.
``DominancePoly2`` a ``Poly2``/``Laurent2`` written in one of three bases indexed
                  by pairs ``(m, l)`` with ``m >= l >= 0``:

    * ``"monomial"``  ``x**(m-l) * y**l``
    * ``"symmetric"`` ``x**m y**l + x**l y**m`` for ``m > l`` and ``x**m y**m``
      (counted once) on the diagonal
    * ``"orbit"``     the W2 orbit sum ``sum_{mu in W2.(m,l)} z**mu`` (distinct
      elements only), W2 acting by permutations and inversions of z1, z2

Index pairs are ordered by the dominance order ``(m,l) <= (n,k)`` iff ``m <= n``
and ``m + l <= n + k``. Where a total order is needed we use the extension
``key = (m + l, m)`` (graded lexicographic), see :func:`total_key`.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

import mpmath

from .errors import MixedParity, NotDivisible
from .scalar import is_exact, simplify, to_mp


def _zero_like(c):
    return Fraction(0) if is_exact(c) else 0 * c


def _lift(c, other):
    # exact coefficients meet an mpmath scalar
    return to_mp(c) if isinstance(other, (mpmath.mpf, mpmath.mpc)) else c


def _clean(c):
    return simplify(c) if is_exact(c) else c


# ---------------------------------------------------------------------------
# univariate


class Polynomial1:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_clean(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def is_zero(self):
        return not self.coeffs

    def __call__(self, x):
        if isinstance(x, (mpmath.mpf, mpmath.mpc)):
            acc, coeffs = 0, [to_mp(c) for c in self.coeffs]
        else:
            acc, coeffs = (Fraction(0) if is_exact(x) else 0), self.coeffs
        for c in reversed(coeffs):
            acc = acc * x + c
        return _clean(acc)

    def _wrap(self, other):
        if isinstance(other, Polynomial1):
            return other
        return Polynomial1([other])

    def __add__(self, other):
        o = self._wrap(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Polynomial1([self.coeff(i) + o.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial1([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial1):
            return Polynomial1([_lift(c, other) * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Polynomial1()
        out = [_zero_like(self.coeffs[0])] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial1(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Polynomial1([_lift(c, scalar) / scalar for c in self.coeffs])

    def __pow__(self, n):
        out = Polynomial1([1])
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial1):
            other = Polynomial1([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial1({list(self.coeffs)!r})"

    def compose(self, inner: "Polynomial1") -> "Polynomial1":
        acc = Polynomial1()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def derivative(self) -> "Polynomial1":
        return Polynomial1([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Polynomial1":
        return self / self.leading

    def map_coeffs(self, f) -> "Polynomial1":
        return Polynomial1([f(c) for c in self.coeffs])

    def parity(self):
        """0 for even, 1 for odd, None if mixed; the zero polynomial counts as even."""
        even = any(c != 0 for c in self.coeffs[0::2])
        odd = any(c != 0 for c in self.coeffs[1::2])
        if even and odd:
            return None
        return 1 if odd else 0

    def divmod_linear_free(self, divisor: "Polynomial1"):
        """Polynomial long division returning (quotient, remainder)."""
        rem = list(self.coeffs)
        dd = divisor.degree
        if dd < 0:
            raise ZeroDivisionError("division by zero polynomial")
        lead = divisor.leading
        quot = [Fraction(0)] * max(len(rem) - dd, 1)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i] / lead
            quot[i - dd] = c
            if c != 0:
                for j, d in enumerate(divisor.coeffs):
                    rem[i - dd + j] = rem[i - dd + j] - c * d
        return Polynomial1(quot), Polynomial1(rem[:dd] if dd > 0 else [])


def substitute_quadratic(p: Polynomial1, map_kind: str = "x^2") -> Polynomial1:
    """Compose ``p`` with ``x -> x**2`` (``"x^2"``) or ``x -> 2x**2 - 1`` (``"2x^2-1"``)."""
    if map_kind in ("x^2", "x->x^2", "square"):
        inner = Polynomial1([0, 0, 1])
    elif map_kind in ("2x^2-1", "x->2x^2-1", "chebyshev"):
        inner = Polynomial1([-1, 0, 2])
    else:
        raise ValueError(f"unknown quadratic map {map_kind!r}")
    return p.compose(inner)


def even_odd_split(p: Polynomial1):
    """Return ``("even", q)`` with ``q(x^2) = p(x)`` or ``("odd", r)`` with ``x r(x^2) = p(x)``."""
    par = p.parity()
    if par is None:
        raise MixedParity(f"{p!r} has both parities")
    if par == 0:
        return "even", Polynomial1(p.coeffs[0::2])
    return "odd", Polynomial1(p.coeffs[1::2])


# ---------------------------------------------------------------------------
# symmetric Laurent polynomials in one variable


def _chebyshev_T(k) -> Polynomial1:
    t0, t1 = Polynomial1([1]), Polynomial1([0, 1])
    if k == 0:
        return t0
    two_x = Polynomial1([0, 2])
    for _ in range(k - 1):
        t0, t1 = t1, two_x * t1 - t0
    return t1


class SymLaurent1:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_clean(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, z):
        zi = 1 / z
        acc = self.coeff(0)
        zk, zik = z, zi
        for k in range(1, len(self.coeffs)):
            acc = acc + self.coeffs[k] * (zk + zik)
            zk, zik = zk * z, zik * zi
        return _clean(acc) if is_exact(acc) else acc

    def __add__(self, other):
        if not isinstance(other, SymLaurent1):
            other = SymLaurent1([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return SymLaurent1([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return SymLaurent1([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, SymLaurent1) else -other)

    def __mul__(self, other):
        if not isinstance(other, SymLaurent1):
            return SymLaurent1([c * other for c in self.coeffs])
        a = self._two_sided()
        b = other._two_sided()
        full = {}
        for i, ca in a.items():
            for j, cb in b.items():
                full[i + j] = full.get(i + j, 0) + ca * cb
        out = [full.get(k, 0) for k in range(max(full) + 1)] if full else []
        return SymLaurent1(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return SymLaurent1([c / scalar for c in self.coeffs])

    def _two_sided(self):
        out = {}
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            out[k] = c
            if k:
                out[-k] = c
        return out

    def __eq__(self, other):
        if not isinstance(other, SymLaurent1):
            other = SymLaurent1([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"SymLaurent1({list(self.coeffs)!r})"

    def monic(self):
        return self / self.leading

    @classmethod
    def from_x_poly(cls, p: Polynomial1) -> "SymLaurent1":
        """Rewrite ``p(x)`` with ``x = (z + 1/z)/2``."""
        full = {}
        for j, c in enumerate(p.coeffs):
            if c == 0:
                continue
            scale = c / Fraction(2) ** j if is_exact(c) else c / 2**j
            for i in range(j + 1):
                e = j - 2 * i
                full[e] = full.get(e, 0) + scale * comb(j, i)
        deg = max((k for k in full if k >= 0), default=-1)
        return cls([full.get(k, 0) for k in range(deg + 1)])

    def to_x_poly(self) -> Polynomial1:
        """Inverse of :meth:`from_x_poly`, using ``z^k + z^-k = 2 T_k(x)``."""
        acc = Polynomial1([self.coeff(0)])
        for k in range(1, len(self.coeffs)):
            acc = acc + _chebyshev_T(k) * (2 * self.coeffs[k])
        return acc

    def parity(self):
        even = any(c != 0 for c in self.coeffs[0::2])
        odd = any(c != 0 for c in self.coeffs[1::2])
        if even and odd:
            return None
        return 1 if odd else 0

    def square_arg(self) -> "SymLaurent1":
        """``p(z**2)`` as a symmetric Laurent polynomial in ``z``."""
        out = [0] * (2 * len(self.coeffs) - 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            out[2 * k] = c
        return SymLaurent1(out)


Z_PLUS_ZINV = SymLaurent1([0, 1])


def symlaurent_square_substitute(p: SymLaurent1):
    """Inverse of ``z -> z**2``: even part ``q(z^2) = p(z)``, odd part ``(z+1/z) r(z^2) = p(z)``."""
    par = p.parity()
    if par is None:
        raise MixedParity(f"{p!r} mixes even and odd indices")
    if par == 0:
        return "even", SymLaurent1(p.coeffs[0::2])
    odd = list(p.coeffs[1::2])  # odd[j] multiplies z^(2j+1) + z^-(2j+1)
    J = len(odd) - 1
    r = [Fraction(0)] * (J + 1)
    r[J] = odd[J]
    for j in range(J - 1, -1, -1):
        r[j] = odd[j] - r[j + 1]
    out = SymLaurent1(r)
    if Z_PLUS_ZINV * out.square_arg() != p:
        raise NotDivisible(f"{p!r} is not divisible by z + 1/z")
    return "odd", out


# ---------------------------------------------------------------------------
# bivariate


class Poly2:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for k, c in (terms or {}).items():
            c = _clean(c)
            if c != 0:
                self.terms[tuple(k)] = c

    @classmethod
    def x(cls):
        return cls({(1, 0): 1})

    @classmethod
    def y(cls):
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    def _wrap(self, other):
        return other if isinstance(other, Poly2) else Poly2.const(other)

    def __add__(self, other):
        o = self._wrap(other)
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out.get(k, 0) + c
        return Poly2(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly2({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            return Poly2({k: c * other for k, c in self.terms.items()})
        out = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + a * b
        return Poly2(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Poly2({k: c / scalar for k, c in self.terms.items()})

    def __pow__(self, n):
        out = Poly2.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, Poly2) and self.terms == other.terms

    def __repr__(self):
        return f"Poly2({dict(sorted(self.terms.items()))!r})"

    def __call__(self, x, y):
        acc = 0
        for (i, j), c in self.terms.items():
            acc = acc + c * x**i * y**j
        return _clean(acc) if is_exact(acc) else acc

    def compose(self, X: "Poly2", Y: "Poly2") -> "Poly2":
        """``self(X(x, y), Y(x, y))``."""
        xp, yp = {0: Poly2.const(1)}, {0: Poly2.const(1)}
        out = Poly2()
        for (i, j), c in self.terms.items():
            if i not in xp:
                for e in range(1, i + 1):
                    if e not in xp:
                        xp[e] = xp[e - 1] * X
            if j not in yp:
                for e in range(1, j + 1):
                    if e not in yp:
                        yp[e] = yp[e - 1] * Y
            out = out + xp[i] * yp[j] * c
        return out

    def negate_x(self) -> "Poly2":
        return Poly2({(i, j): (-c if i % 2 else c) for (i, j), c in self.terms.items()})

    def max_abs_diff(self, other: "Poly2"):
        keys = set(self.terms) | set(other.terms)
        return max((abs(self.terms.get(k, 0) - other.terms.get(k, 0)) for k in keys), default=0)


class Laurent2:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for k, c in (terms or {}).items():
            c = _clean(c)
            if c != 0:
                self.terms[tuple(k)] = c

    def __add__(self, other):
        if not isinstance(other, Laurent2):
            other = Laurent2({(0, 0): other})
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Laurent2(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent2({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Laurent2):
            return Laurent2({k: c * other for k, c in self.terms.items()})
        out = {}
        for (a, b), c in self.terms.items():
            for (d, e), f in other.terms.items():
                key = (a + d, b + e)
                out[key] = out.get(key, 0) + c * f
        return Laurent2(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Laurent2({k: c / scalar for k, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Laurent2) and self.terms == other.terms

    def __repr__(self):
        return f"Laurent2({dict(sorted(self.terms.items()))!r})"

    def __call__(self, z1, z2):
        # int ** negative int is a float
        z1 = Fraction(z1) if isinstance(z1, int) else z1
        z2 = Fraction(z2) if isinstance(z2, int) else z2
        acc = 0
        for (a, b), c in self.terms.items():
            acc = acc + c * z1**a * z2**b
        return acc

    def substitute_product_ratio(self) -> "Laurent2":
        """Rewrite ``f(w1, w2)`` with ``w1 = z1 z2`` and ``w2 = z1 / z2``."""
        return Laurent2({(a + b, a - b): c for (a, b), c in self.terms.items()})

    def is_w2_invariant(self) -> bool:
        for (a, b), c in self.terms.items():
            for img in ((b, a), (-a, b), (a, -b)):
                if self.terms.get(img, 0) != c:
                    return False
        return True


# ---------------------------------------------------------------------------
# dominance order


def dominates(small, big) -> bool:
    """True iff ``small <= big`` in the dominance order."""
    (m, l), (n, k) = small, big
    return m <= n and m + l <= n + k


def total_key(idx):
    m, l = idx
    return (m + l, m)


def downset(idx, key=total_key):
    """All ``(m, l)`` with ``m >= l >= 0`` and ``(m, l) <= idx``, sorted by ``key``."""
    n, k = idx
    if not n >= k >= 0:
        raise ValueError(f"index {idx} must satisfy n >= k >= 0")
    out = [(m, l) for m in range(n + 1) for l in range(m + 1) if m + l <= n + k]
    return sorted(out, key=key)


def _orbit(idx):
    m, l = idx
    pts = set()
    for a, b in ((m, l), (l, m)):
        for sa in (1, -1):
            for sb in (1, -1):
                pts.add((sa * a, sb * b))
    return pts


def orbit_sum(idx) -> Laurent2:
    return Laurent2({p: 1 for p in _orbit(idx)})


def symmetric_monomial(idx) -> Poly2:
    m, l = idx
    if m == l:
        return Poly2({(m, m): 1})
    return Poly2({(m, l): 1, (l, m): 1})


_HALF_CACHE: dict = {}


def _half_cos_power(j):
    """``((z + 1/z)/2)**j`` as a dict exponent -> coefficient."""
    if j not in _HALF_CACHE:
        _HALF_CACHE[j] = {j - 2 * i: Fraction(comb(j, i), 2**j) for i in range(j + 1)}
    return _HALF_CACHE[j]


class DominancePoly2:
    """A two-variable polynomial expanded in one of the dominance-indexed bases."""

    KINDS = ("monomial", "symmetric", "orbit")

    def __init__(self, coeffs, basis_kind="monomial"):
        if basis_kind not in self.KINDS:
            raise ValueError(f"unknown basis {basis_kind!r}")
        self.basis_kind = basis_kind
        self.coeffs = {}
        for idx, c in coeffs.items():
            m, l = idx
            if not m >= l >= 0:
                raise ValueError(f"bad index {idx}")
            c = _clean(c)
            if c != 0:
                self.coeffs[(m, l)] = c

    @property
    def leading(self):
        """Maximal index; raises if the support has no unique dominance maximum."""
        if not self.coeffs:
            return None
        top = max(self.coeffs, key=total_key)
        if not all(dominates(i, top) for i in self.coeffs):
            raise ValueError("support has no dominance-maximal index")
        return top

    @property
    def leading_coeff(self):
        return self.coeffs[self.leading]

    def is_monic(self):
        return self.leading_coeff == 1

    def __eq__(self, other):
        return (
            isinstance(other, DominancePoly2)
            and self.basis_kind == other.basis_kind
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"DominancePoly2({dict(sorted(self.coeffs.items(), key=lambda kv: total_key(kv[0])))!r}, {self.basis_kind!r})"

    def scale(self, c):
        return DominancePoly2({k: v * c for k, v in self.coeffs.items()}, self.basis_kind)

    def monic(self):
        return self.scale(1 / self.leading_coeff)

    # -- materialisation -------------------------------------------------
    def to_poly2(self) -> Poly2:
        if self.basis_kind == "monomial":
            return Poly2({(m - l, l): c for (m, l), c in self.coeffs.items()})
        if self.basis_kind == "symmetric":
            out = Poly2()
            for idx, c in self.coeffs.items():
                out = out + symmetric_monomial(idx) * c
            return out
        raise TypeError("orbit-basis polynomials are Laurent polynomials; use to_laurent()")

    def to_laurent(self) -> Laurent2:
        if self.basis_kind != "orbit":
            raise TypeError("only orbit-basis polynomials materialise as Laurent2")
        out = Laurent2()
        for idx, c in self.coeffs.items():
            out = out + orbit_sum(idx) * c
        return out

    def __call__(self, *args):
        if self.basis_kind == "orbit":
            return self.to_laurent()(*args)
        return self.to_poly2()(*args)

    @classmethod
    def from_poly2(cls, p: Poly2, basis_kind="monomial"):
        if basis_kind == "monomial":
            return cls({(i + j, j): c for (i, j), c in p.terms.items()}, "monomial")
        if basis_kind == "symmetric":
            out = {}
            for (i, j), c in p.terms.items():
                if p.terms.get((j, i), 0) != c:
                    raise ValueError("polynomial is not symmetric")
                if i >= j:
                    out[(i, j)] = c
            return cls(out, "symmetric")
        raise ValueError(basis_kind)

    @classmethod
    def from_laurent(cls, p: Laurent2):
        if not p.is_w2_invariant():
            raise ValueError("Laurent polynomial is not W2-invariant")
        return cls({(a, b): c for (a, b), c in p.terms.items() if a >= b >= 0}, "orbit")


def _peel(target: dict, expand, leading_scale):
    """Rewrite ``target`` (dict idx -> coeff) in a triangular basis.

    ``expand(idx)`` gives the basis element at ``idx`` as a dict in the target's
    coordinates; ``leading_scale(idx)`` its coefficient at ``idx``.
    """
    work = dict(target)
    out = {}
    while True:
        work = {k: v for k, v in work.items() if v != 0}
        if not work:
            return out
        top = max(work, key=total_key)
        c = work[top] / leading_scale(top)
        out[top] = c
        for k, v in expand(top).items():
            work[k] = work.get(k, 0) - c * v


def sympoly_from_elementary(p: DominancePoly2) -> DominancePoly2:
    """``p(xi, eta)`` in the monomial basis -> ``p(x+y, xy)`` in the symmetric basis."""
    if p.basis_kind != "monomial":
        raise ValueError("expects a monomial-basis polynomial in (xi, eta)")
    sym = p.to_poly2().compose(Poly2({(1, 0): 1, (0, 1): 1}), Poly2({(1, 1): 1}))
    return DominancePoly2.from_poly2(sym, "symmetric")


def elementary_from_sympoly(p: DominancePoly2) -> DominancePoly2:
    """Inverse of :func:`sympoly_from_elementary`."""
    if p.basis_kind != "symmetric":
        raise ValueError("expects a symmetric-basis polynomial")

    def expand(idx):
        m, l = idx
        img = sympoly_from_elementary(DominancePoly2({idx: 1}, "monomial"))
        return img.coeffs

    return DominancePoly2(_peel(p.coeffs, expand, lambda idx: 1), "monomial")


def laurent_from_symmetric(p: DominancePoly2) -> DominancePoly2:
    """Substitute ``x_i = (z_i + 1/z_i)/2`` and expand in W2 orbit sums."""
    if p.basis_kind != "symmetric":
        raise ValueError("expects a symmetric-basis polynomial")
    lp = Laurent2()
    for (i, j), c in p.to_poly2().terms.items():
        a, b = _half_cos_power(i), _half_cos_power(j)
        lp = lp + Laurent2({(ea, eb): ca * cb for ea, ca in a.items() for eb, cb in b.items()}) * c
    return DominancePoly2.from_laurent(lp)


def symmetric_from_laurent(p: DominancePoly2) -> DominancePoly2:
    """Inverse of :func:`laurent_from_symmetric`."""
    if p.basis_kind != "orbit":
        raise ValueError("expects an orbit-basis polynomial")

    def expand(idx):
        return laurent_from_symmetric(DominancePoly2({idx: 1}, "symmetric")).coeffs

    return DominancePoly2(_peel(p.coeffs, expand, lambda idx: Fraction(1, 2 ** (idx[0] + idx[1]))), "symmetric")
