"""Scalar substrate: double-double reals, exact rationals, finiteness guards.

``ExtendedReal`` is an unevaluated sum ``hi + lo`` of two binary64 numbers
(about 31 significant decimal digits).  The four arithmetic operations and
square / k-th roots are implemented with error-free transformations; the
transcendental functions delegate to mpmath at 160 bits and round the result
back to a double-double.

Exact rationals are plain :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import mpmath

from .errors import NonFiniteError, DomainError

__all__ = [
    "ExtendedReal",
    "EXT_EPS",
    "as_ext",
    "check_finite",
    "ext_sqrt",
    "ext_root",
    "ext_exp",
    "ext_log",
    "ext_cos",
    "ext_acos",
    "ext_cosh",
    "ext_acosh",
    "ext_pow",
    "ext_pi",
    "rational_binomial",
    "ulp",
]

# unit roundoff of the double-double format
EXT_EPS = 2.0**-104

_SPLITTER = 134217729.0  # 2**27 + 1
_MP_PREC = 160


def check_finite(x: float, what: str = "value") -> float:
    if not math.isfinite(x):
        raise NonFiniteError(f"{what} is not finite: {x!r}")
    return x


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _quick_two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    return s, b - (s - a)


def _split(a: float) -> tuple[float, float]:
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ahi, alo = _split(a)
    bhi, blo = _split(b)
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


class ExtendedReal:
    """Double-double real number ``hi + lo`` with ``|lo| <= ulp(hi)/2``."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi: float = 0.0, lo: float = 0.0):
        hi = float(hi)
        lo = float(lo)
        if not (math.isfinite(hi) and math.isfinite(lo)):
            raise NonFiniteError(f"non-finite double-double ({hi!r}, {lo!r})")
        s, e = _two_sum(hi, lo)
        object.__setattr__(self, "hi", s)
        object.__setattr__(self, "lo", e)

    def __setattr__(self, name, value):
        raise AttributeError("ExtendedReal is immutable")

    @classmethod
    def _raw(cls, hi: float, lo: float) -> "ExtendedReal":
        # caller guarantees normalisation
        if not math.isfinite(hi):
            raise NonFiniteError(f"non-finite double-double result {hi!r}")
        obj = object.__new__(cls)
        object.__setattr__(obj, "hi", hi)
        object.__setattr__(obj, "lo", lo)
        return obj

    # conversions ---------------------------------------------------------
    @classmethod
    def from_int(cls, n: int) -> "ExtendedReal":
        hi = float(n)
        lo = float(n - int(hi))
        return cls(hi, lo)

    @classmethod
    def from_fraction(cls, q) -> "ExtendedReal":
        q = Fraction(q)
        hi = float(q)
        lo = float(q - Fraction(hi))
        return cls(hi, lo)

    @classmethod
    def from_mpf(cls, x) -> "ExtendedReal":
        hi = float(x)
        lo = float(x - mpmath.mpf(hi))
        return cls(hi, lo)

    @classmethod
    def from_str(cls, s: str) -> "ExtendedReal":
        with mpmath.workprec(_MP_PREC):
            return cls.from_mpf(mpmath.mpf(s))

    def to_mpf(self):
        return mpmath.mpf(self.hi) + mpmath.mpf(self.lo)

    def to_fraction(self) -> Fraction:
        return Fraction(self.hi) + Fraction(self.lo)

    def __float__(self) -> float:
        return self.hi + self.lo

    # arithmetic ----------------------------------------------------------
    def __neg__(self):
        return ExtendedReal._raw(-self.hi, -self.lo)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.hi < 0 or (self.hi == 0 and self.lo < 0) else self

    def __add__(self, other):
        o = as_ext(other)
        if o is NotImplemented:
            return NotImplemented
        s, e = _two_sum(self.hi, o.hi)
        t, f = _two_sum(self.lo, o.lo)
        e += t
        s, e = _quick_two_sum(s, e)
        e += f
        s, e = _quick_two_sum(s, e)
        return ExtendedReal._raw(s, e)

    __radd__ = __add__

    def __sub__(self, other):
        o = as_ext(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = as_ext(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = as_ext(other)
        if o is NotImplemented:
            return NotImplemented
        p, e = _two_prod(self.hi, o.hi)
        e += self.hi * o.lo + self.lo * o.hi
        p, e = _quick_two_sum(p, e)
        return ExtendedReal._raw(p, e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = as_ext(other)
        if o is NotImplemented:
            return NotImplemented
        if o.hi == 0.0:
            raise ZeroDivisionError("double-double division by zero")
        q1 = self.hi / o.hi
        r = self - o * q1
        q2 = r.hi / o.hi
        r = r - o * q2
        q3 = r.hi / o.hi
        q1, q2 = _quick_two_sum(q1, q2)
        return ExtendedReal._raw(q1, q2) + q3

    def __rtruediv__(self, other):
        o = as_ext(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return ext_pow(self, n)
        if n < 0:
            return ExtendedReal(1.0) / (self ** (-n))
        result = ExtendedReal(1.0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparisons ---------------------------------------------------------
    def _key(self):
        return (self.hi, self.lo)

    def __eq__(self, other):
        o = as_ext(other)
        if o is NotImplemented:
            return NotImplemented
        return self._key() == o._key()

    def __lt__(self, other):
        o = as_ext(other)
        if o is NotImplemented:
            return NotImplemented
        return self._key() < o._key()

    def __le__(self, other):
        o = as_ext(other)
        if o is NotImplemented:
            return NotImplemented
        return self._key() <= o._key()

    def __gt__(self, other):
        o = as_ext(other)
        if o is NotImplemented:
            return NotImplemented
        return self._key() > o._key()

    def __ge__(self, other):
        o = as_ext(other)
        if o is NotImplemented:
            return NotImplemented
        return self._key() >= o._key()

    def __hash__(self):
        return hash(self._key())

    def __bool__(self):
        return self.hi != 0.0

    def __repr__(self):
        return f"ExtendedReal({self.hi!r}, {self.lo!r})"

    def __str__(self):
        with mpmath.workprec(_MP_PREC):
            return mpmath.nstr(self.to_mpf(), 32)

    def __format__(self, spec):
        if not spec:
            return str(self)
        return format(float(self), spec)

    def is_zero(self) -> bool:
        return self.hi == 0.0

    def sign(self) -> int:
        return (self.hi > 0) - (self.hi < 0)


def as_ext(x):
    """Coerce ``x`` to :class:`ExtendedReal`; NotImplemented for foreign types."""
    if isinstance(x, ExtendedReal):
        return x
    if isinstance(x, bool):
        return ExtendedReal(float(x))
    if isinstance(x, int):
        return ExtendedReal.from_int(x)
    if isinstance(x, float):
        return ExtendedReal(x)
    if isinstance(x, Rational):
        return ExtendedReal.from_fraction(Fraction(x.numerator, x.denominator))
    if isinstance(x, mpmath.mpf):
        return ExtendedReal.from_mpf(x)
    try:
        import numpy as np

        if isinstance(x, np.floating):
            return ExtendedReal(float(x))
        if isinstance(x, np.integer):
            return ExtendedReal.from_int(int(x))
    except ImportError:  # pragma: no cover
        pass
    return NotImplemented


def ulp(x, precision: str = "double") -> float:
    """Spacing of representable values near ``x`` in the given precision."""
    if precision not in ("double", "extended"):
        raise ValueError(f"unknown precision {precision!r}")
    hi = x.hi if isinstance(x, ExtendedReal) else float(x)
    u = math.ulp(hi)
    if precision == "extended":
        return u * 2.0**-53
    return u


def ext_sqrt(x) -> ExtendedReal:
    x = as_ext(x)
    if x.hi < 0:
        raise DomainError(f"square root of negative value {float(x)!r}")
    if x.hi == 0:
        return ExtendedReal(0.0)
    s = math.sqrt(x.hi)
    e = x - ExtendedReal(s) * s
    return ExtendedReal(s) + e.hi / (2.0 * s)


def ext_root(x, k: int) -> ExtendedReal:
    """Real positive k-th root of a nonnegative double-double."""
    x = as_ext(x)
    if k == 2:
        return ext_sqrt(x)
    if x.hi < 0:
        raise DomainError(f"{k}-th root of negative value {float(x)!r}")
    if x.hi == 0:
        return ExtendedReal(0.0)
    y = ExtendedReal(x.hi ** (1.0 / k))
    for _ in range(2):
        yk1 = y ** (k - 1)
        y = y - (yk1 * y - x) / (yk1 * k)
    return y


def _via_mp(fn, *args) -> ExtendedReal:
    with mpmath.workprec(_MP_PREC):
        return ExtendedReal.from_mpf(fn(*[as_ext(a).to_mpf() for a in args]))


def ext_exp(x) -> ExtendedReal:
    return _via_mp(mpmath.exp, x)


def ext_log(x) -> ExtendedReal:
    if as_ext(x).hi <= 0:
        raise DomainError(f"logarithm of nonpositive value {float(x)!r}")
    return _via_mp(mpmath.log, x)


def ext_cos(x) -> ExtendedReal:
    return _via_mp(mpmath.cos, x)


def ext_acos(x) -> ExtendedReal:
    if abs(as_ext(x)) > 1:
        raise DomainError(f"arccos argument outside [-1, 1]: {float(x)!r}")
    return _via_mp(mpmath.acos, x)


def ext_cosh(x) -> ExtendedReal:
    return _via_mp(mpmath.cosh, x)


def ext_acosh(x) -> ExtendedReal:
    if as_ext(x) < 1:
        raise DomainError(f"arccosh argument below 1: {float(x)!r}")
    return _via_mp(mpmath.acosh, x)


def ext_pow(x, y) -> ExtendedReal:
    """x**y for x > 0 and real y."""
    if as_ext(x).hi <= 0:
        raise DomainError(f"real power of nonpositive base {float(x)!r}")
    return _via_mp(mpmath.power, x, y)


def ext_pi() -> ExtendedReal:
    with mpmath.workprec(_MP_PREC):
        return ExtendedReal.from_mpf(+mpmath.pi)


def rational_binomial(n: int, k: int) -> Fraction:
    """Exact binomial coefficient as a Fraction; requires 0 <= k <= n <= 1000."""
    if not (0 <= k <= n <= 1000):
        raise ValueError(f"binomial arguments out of range: n={n}, k={k}")
    return Fraction(math.comb(n, k))
