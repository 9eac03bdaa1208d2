"""Scalar arithmetic and terminating (q-)hypergeometric sums.

Three kinds of number circulate through the package:

* ``fractions.Fraction`` for exact rationals (Python ints are accepted and
  promoted),
* :class:`GaussRat` for exact complex rationals ``re + i*im``,
* ``mpmath.mpf`` / ``mpmath.mpc`` for high-precision floating values.

Exact values stay exact under ``+ - * /``; mixing an exact value with an
mpmath value goes through :func:`to_mp` first.

Basic hypergeometric series follow the Gasper--Rahman convention::

    r phi s (a_1..a_r; b_1..b_s; q, z)
        = sum_k (a_1..a_r; q)_k / ((b_1..b_s; q)_k (q; q)_k)
                * ((-1)^k q^(k(k-1)/2))^(1+s-r) * z^k
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath

from .errors import LowerParameterPole, NonTerminating, ParameterOutOfRange

DEFAULT_PREC = 256


class GaussRat:
    """Exact complex rational ``re + i*im`` with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussRat):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussRat(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return GaussRat(1) / (self ** (-n))
        out = GaussRat(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        if self.im == 0:
            return f"GaussRat({self.re})"
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


I = GaussRat(0, 1)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussRat))


def simplify(x):
    """Collapse a GaussRat with zero imaginary part to a Fraction."""
    if isinstance(x, GaussRat) and x.im == 0:
        return x.re
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


def parse_scalar(text):
    """Parse ``"p/q"``, ``"p/q+r/s*i"`` or ``"i"``-suffixed strings into an exact scalar.

    Floating literals are rejected on purpose.
    """
    s = str(text).strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if "." in s or "e" in s.lower():
        raise ValueError(f"floating literal not accepted for exact scalar: {text!r}")
    if s.endswith("i"):
        body = s[:-1]
        if body.endswith("*"):
            body = body[:-1]
        # split at the last sign that is not in leading position
        cut = max(body.rfind("+", 1), body.rfind("-", 1))
        if cut > 0 and body[cut - 1] not in "/":
            re_part, im_part = body[:cut], body[cut:]
        else:
            re_part, im_part = "0", body
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return simplify(GaussRat(Fraction(re_part), Fraction(im_part)))
    return Fraction(s)


def to_mp(x):
    """Convert any scalar to an mpmath number at the current working precision."""
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return x
    if isinstance(x, GaussRat):
        if x.im == 0:
            return to_mp(x.re)
        return mpmath.mpc(to_mp(x.re), to_mp(x.im))
    if isinstance(x, Rational):
        return mpmath.mpf(int(x.numerator)) / int(x.denominator)
    if isinstance(x, complex):
        return mpmath.mpc(x)
    return mpmath.mpf(x)


def is_zero(x, tol=None) -> bool:
    if tol is None or is_exact(x):
        return x == 0
    return abs(x) <= tol


@dataclass(frozen=True)
class QBase:
    """Base ``q`` with ``0 < q < 1``, optionally declared through ``p`` with ``q = p**2``.

    Half-integer powers of ``q`` are then exact powers of ``p``.
    """

    q: Fraction
    half_base: Fraction | None = None

    def __post_init__(self):
        q = Fraction(self.q)
        object.__setattr__(self, "q", q)
        if not 0 < q < 1:
            raise ParameterOutOfRange(f"base q must satisfy 0 < q < 1, got {q}")
        if self.half_base is not None:
            p = Fraction(self.half_base)
            object.__setattr__(self, "half_base", p)
            if p * p != q:
                raise ParameterOutOfRange(f"half base {p} does not square to {q}")

    @classmethod
    def from_half(cls, p) -> "QBase":
        p = Fraction(p)
        return cls(p * p, p)

    def power(self, exponent) -> Fraction:
        """``q**exponent`` for integer or half-integer exponent."""
        e = Fraction(exponent)
        if e.denominator == 1:
            return self.q ** int(e)
        if e.denominator == 2 and self.half_base is not None:
            return self.half_base ** int(2 * e)
        raise ValueError(f"q^{e} is not representable exactly without a half base")


def pochhammer(a, n: int):
    """Rising factorial ``(a)_n = a (a+1) ... (a+n-1)``; ``(a)_0 = 1``."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    if not is_exact(a):
        out = mpmath.mpf(1)
        for j in range(n):
            out = out * (a + j)
        return out
    out = Fraction(1)
    for j in range(n):
        out = out * (a + j)
    return simplify(out)


def q_pochhammer(a, q, n: int):
    """``(a; q)_n = prod_{k<n} (1 - a q^k)``."""
    if n < 0:
        raise ValueError("q_pochhammer needs n >= 0")
    exact = is_exact(a) and is_exact(q)
    out = Fraction(1) if exact else mpmath.mpf(1)
    qk = Fraction(1) if is_exact(q) else 1
    for _ in range(n):
        out = out * (1 - a * qk)
        qk = qk * q
    return simplify(out) if is_exact(out) else out


def q_pochhammer_multi(params, q, n: int):
    out = 1
    for a in params:
        out = out * q_pochhammer(a, q, n)
    return out


def q_pochhammer_inf(a, q, K: int, prec: int = DEFAULT_PREC):
    """Truncated infinite product ``prod_{k<K} (1 - a q^k)`` in floating point.

    Returns ``(value, bound)`` where ``bound = 2|a| |q|^K / (1 - |q|)`` bounds the
    relative truncation error whenever that quantity is below 1/2.
    """
    with mpmath.workprec(prec):
        qm = to_mp(q)
        am = to_mp(a)
        if abs(qm) >= 1:
            raise ParameterOutOfRange("q_pochhammer_inf needs |q| < 1")
        if K < 1:
            raise ValueError("truncation order K must be >= 1")
        val = mpmath.mpf(1)
        qk = mpmath.mpf(1)
        for _ in range(K):
            val *= 1 - am * qk
            qk *= qm
        bound = 2 * abs(am) * abs(qm) ** K / (1 - abs(qm))
        return +val, +bound


def _nonpositive_integer(a):
    a = simplify(a)
    if isinstance(a, Fraction) and a.denominator == 1 and a <= 0:
        return int(-a)
    return None


def _q_power_index(a, q):
    """Return m >= 0 with ``a == q**(-m)`` exactly, else None."""
    a = simplify(a)
    q = simplify(q)
    if not (isinstance(a, Fraction) and isinstance(q, Fraction)):
        return None
    if a == 0 or q == 0:
        return None
    qq = abs(q)
    if qq == 1:
        return 0 if a == 1 else None
    m = 0
    val = Fraction(1)
    inv = 1 / q
    bound = abs(a)
    while True:
        if val == a:
            return m
        if abs(val) > bound:
            return None
        m += 1
        val *= inv
        if m > 10_000:
            return None


def termination_index(upper, q=None):
    """Smallest terminating index among upper parameters, or None."""
    best = None
    for a in upper:
        m = _nonpositive_integer(a) if q is None else _q_power_index(a, q)
        if m is not None and (best is None or m < best):
            best = m
    return best


def hyp_terminating(upper, lower, z, terms: int | None = None):
    """Terminating ``rFs(upper; lower; z)``.

    ``terms`` overrides automatic termination detection (needed for floating
    parameters); the sum then runs over ``k = 0..terms``.
    """
    K = termination_index(upper) if terms is None else terms
    if K is None:
        raise NonTerminating(f"no upper parameter of {upper} is a nonpositive integer")
    exact = all(is_exact(v) for v in (*upper, *lower, z))
    total = Fraction(0) if exact else 0
    term = Fraction(1) if exact else 1
    for k in range(K + 1):
        total = total + term
        if k == K:
            break
        num = 1
        for a in upper:
            num = num * (a + k)
        den = k + 1
        for b in lower:
            f = b + k
            if f == 0:
                if num == 0:
                    break
                raise LowerParameterPole(f"lower parameter {b} hits zero at k={k + 1} <= {K}")
            den = den * f
        if num == 0:
            break
        term = term * num * z / den
    return simplify(total) if exact else total


def qhyp_terminating(upper, lower, q, z, terms: int | None = None):
    """Terminating basic hypergeometric ``r phi s(upper; lower; q, z)``."""
    K = termination_index(upper, q) if terms is None else terms
    if K is None:
        raise NonTerminating(f"no upper parameter of {upper} is q^(-m)")
    r, s = len(upper), len(lower)
    expo = 1 + s - r
    exact = all(is_exact(v) for v in (*upper, *lower, q, z))
    total = Fraction(0) if exact else 0
    term = Fraction(1) if exact else 1
    qk = Fraction(1) if exact else 1  # q^k
    for k in range(K + 1):
        total = total + term
        if k == K:
            break
        num = 1
        for a in upper:
            num = num * (1 - a * qk)
        den = 1 - qk * q
        for b in lower:
            f = 1 - b * qk
            if f == 0:
                if num == 0:
                    break
                raise LowerParameterPole(f"lower parameter {b} gives zero factor at k={k + 1} <= {K}")
            den = den * f
        if num == 0:
            break
        # ratio of ((-1)^k q^{k(k-1)/2})^expo between k+1 and k is (-q^k)^expo
        extra = (-qk) ** expo if expo >= 0 else 1 / ((-qk) ** (-expo))
        term = term * num * z * extra / den
        qk = qk * q
    return simplify(total) if exact else total
