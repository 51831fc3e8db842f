"""Exact algebra of real Möbius maps t -> (a t + b)/(t + d).

Coefficients given as ints or Fractions stay exact; floats stay floats.
When the coefficients are rational but the fixed points are irrational the
eigen data is carried as double-double values.

The map corresponds to the matrix [[a, b], [1, d]], and composition is
matrix multiplication followed by normalising the lower-left entry to 1.
For distinct real eigenvalues lam (larger modulus) and mu, the attracting
fixed point is L = lam - d, the other one is L1 = mu - d, and the
multiplier at L is m = mu / lam.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

import mpmath

from .catalog import FunctionSpec, Mobius, fixed_point
from .errors import (
    DegenerateEigen,
    OrbitkitError,
    PoleAtFixedPoint,
    PoleHit,
    PoleStart,
    RepellingStart,
    Unsupported,
)
from .numeric import ExtendedReal, as_ext, ext_sqrt

__all__ = [
    "MobiusCoeffs",
    "MobiusEigen",
    "QParams",
    "compose",
    "fixed_points",
    "eigen",
    "q_from_lms",
    "lms_from_abd",
    "associated_q",
    "iterate_closed",
    "iterate_brute",
    "candidate_limit_exact",
    "candidate_limit_alternate",
    "fibonacci",
    "fibonacci_residual",
]

Real = Union[Fraction, float, ExtendedReal]


def _num(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, ExtendedReal):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    return float(x)


def _is_exact(*xs) -> bool:
    return all(isinstance(x, Fraction) for x in xs)


def _isqrt_fraction(q: Fraction):
    """Exact square root of a nonnegative Fraction, or None if irrational."""
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _sqrt(x):
    if isinstance(x, Fraction):
        r = _isqrt_fraction(x)
        return r if r is not None else ext_sqrt(x)
    if isinstance(x, ExtendedReal):
        return ext_sqrt(x)
    return math.sqrt(x)


def _is_zero(x) -> bool:
    return float(x) == 0.0 if isinstance(x, ExtendedReal) else x == 0


@dataclass(frozen=True)
class MobiusCoeffs:
    a: Real
    b: Real
    d: Real

    def __post_init__(self):
        for name in ("a", "b", "d"):
            object.__setattr__(self, name, _num(getattr(self, name)))
        if self.b == self.a * self.d:
            raise ValueError("need b != a*d (otherwise the map is constant)")

    @property
    def exact(self) -> bool:
        return _is_exact(self.a, self.b, self.d)

    def __call__(self, t):
        den = t + self.d
        if _is_zero(den):
            raise PoleHit(f"t={t!r} is the pole -d of the map")
        return (self.a * t + self.b) / den

    def matrix(self):
        return ((self.a, self.b), (1, self.d))

    @property
    def discriminant(self):
        return (self.a - self.d) ** 2 + 4 * self.b

    def spec(self) -> Mobius:
        """The catalog spec for this map (exact coefficients are preserved)."""
        conv = lambda x: x if isinstance(x, Fraction) else float(x)
        return Mobius(conv(self.a), conv(self.b), conv(self.d))

    @classmethod
    def from_spec(cls, spec: Mobius) -> "MobiusCoeffs":
        return cls(spec.a, spec.b, spec.d)

    @classmethod
    def from_matrix(cls, M) -> "MobiusCoeffs":
        (p, q), (r, s) = M
        if _is_zero(r):
            raise Unsupported("lower-left matrix entry is 0: the composition is affine")
        return cls(p / r, q / r, s / r)


def compose(f: MobiusCoeffs, g: MobiusCoeffs) -> MobiusCoeffs:
    """f o g via the matrix product M_f M_g."""
    (a1, b1), (c1, d1) = f.matrix()
    (a2, b2), (c2, d2) = g.matrix()
    M = ((a1 * a2 + b1 * c2, a1 * b2 + b1 * d2), (c1 * a2 + d1 * c2, c1 * b2 + d1 * d2))
    return MobiusCoeffs.from_matrix(M)


def fixed_points(mc: MobiusCoeffs) -> tuple:
    """Roots of t^2 + (d - a) t - b, ascending (a double root appears once)."""
    disc = mc.discriminant
    if disc < 0:
        return ()
    half = (mc.a - mc.d) / 2
    if disc == 0:
        return (half,)
    r = _sqrt(disc)
    lo, hi = half - r / 2, half + r / 2
    return (lo, hi)


@dataclass(frozen=True)
class MobiusEigen:
    lam: Real
    mu: Real
    L: Real
    L1: Real
    m: Real

    @property
    def m1(self):
        """Multiplier at the other fixed point, (ad - b)/mu^2 = 1/m."""
        return self.lam / self.mu

    @property
    def eigenvectors(self):
        """(L, 1) for lam and (b, -L) for mu, b taken from lam*mu relation."""
        b = -self.L * self.L1
        return (self.L, 1), (b, -self.L)


def eigen(mc: MobiusCoeffs) -> MobiusEigen:
    disc = mc.discriminant
    if disc <= 0:
        raise DegenerateEigen(
            f"discriminant {float(disc)!r} <= 0: parabolic or elliptic map is out of scope"
        )
    r = _sqrt(disc)
    tr = mc.a + mc.d
    e1, e2 = (tr + r) / 2, (tr - r) / 2
    lam, mu = (e1, e2) if abs(e1) >= abs(e2) else (e2, e1)
    if abs(float(lam)) == abs(float(mu)):
        raise DegenerateEigen("eigenvalues of equal modulus: no attracting fixed point")
    return MobiusEigen(lam=lam, mu=mu, L=lam - mc.d, L1=mu - mc.d, m=mu / lam)


@dataclass(frozen=True)
class QParams:
    L: Real
    m: Real
    s: Real

    def __post_init__(self):
        for name in ("L", "m", "s"):
            object.__setattr__(self, name, _num(getattr(self, name)))
        if self.m == 0 or self.m == 1:
            raise ValueError("m must differ from 0 and 1")
        if self.s == 0:
            raise ValueError("s must be nonzero")


def q_from_lms(p: QParams) -> MobiusCoeffs:
    """The Möbius map with Q(L) = L, Q'(L) = m, Q''(L) = s."""
    L, m, s = p.L, p.m, p.s
    a = (L * s - 2 * m * m) / s
    b = (L / s) * (2 * m * m - 2 * m - L * s)
    d = -(2 * m + L * s) / s
    return MobiusCoeffs(a, b, d)


def lms_from_abd(mc: MobiusCoeffs, L) -> QParams:
    """(L, Q'(L), Q''(L)) at the fixed point L of ``mc``."""
    L = _num(L)
    den = L + mc.d
    if _is_zero(den):
        raise PoleAtFixedPoint("L + d == 0: the fixed point sits on the pole")
    det = mc.a * mc.d - mc.b
    return QParams(L, det / den**2, -2 * det / den**3)


def associated_q(f: FunctionSpec, gap: float = 1.0) -> MobiusCoeffs:
    """Q with f's fixed point and multiplier and Q''(L) = f''(L) - gap."""
    if not gap > 0:
        raise ValueError("gap must be positive (Q''(L) < f''(L) is strict)")
    exact = f.exact_fixed_point()
    if exact is not None:
        # exact data keeps Q(L) = L and Q'(L) = m free of rounding, which the
        # ordering Q < f needs when orbits get within 1e-20 of L
        L, m, s = exact
        return q_from_lms(QParams(L, m, s - Fraction(gap)))
    info = fixed_point(f)
    if info.s is None:
        raise Unsupported("f''(L) unavailable")
    return q_from_lms(QParams(info.L, info.m, info.s - gap))


def iterate_brute(mc: MobiusCoeffs, n: int, t):
    for _ in range(n):
        t = mc(t)
    return t


def iterate_closed(mc: MobiusCoeffs, n: int, t):
    """n-th iterate from the eigen decomposition.

    Q^n(t) = ((L^2 lam^n + b mu^n) t + b L (lam^n - mu^n))
             / (L (lam^n - mu^n) t + b lam^n + L^2 mu^n)
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return t
    e = eigen(mc)
    L, b = e.L, mc.b
    ln, mn = e.lam**n, e.mu**n
    num = (L * L * ln + b * mn) * t + b * L * (ln - mn)
    parts = (L * (ln - mn) * t, b * ln, L * L * mn)
    den = parts[0] + parts[1] + parts[2]
    if _is_exact(den):
        pole = den == 0
    else:
        scale = sum(abs(float(p)) for p in parts)
        pole = abs(float(den)) < 1e-12 * scale
    if pole:
        raise PoleHit(f"t={float(t)!r} reaches the pole within {n} steps")
    return num / den


def candidate_limit_alternate(mc: MobiusCoeffs, t0):
    """|1/(t0 - L) + s/(2m(m - 1))|^-1 with (m, s) taken at L."""
    e = eigen(mc)
    q = lms_from_abd(mc, e.L)
    inv = 1 / (t0 - e.L) + q.s / (2 * q.m * (q.m - 1))
    return abs(1 / inv)


def candidate_limit_exact(mc: MobiusCoeffs, t0, rel_tol: float = 1e-10):
    """Limit of |L - f^n(t0)| / |m|^n for a Möbius map.

    Evaluates |(L^2 + b)(L - t0)/(b + L t0)| and cross-checks it against
    the second-order form ``candidate_limit_alternate``.
    """
    t0 = _num(t0)
    e = eigen(mc)
    L, b = e.L, mc.b
    if t0 == L:
        return Fraction(0) if _is_exact(L, t0) else 0.0
    if t0 == e.L1:
        raise RepellingStart(f"t0={float(t0)!r} is the repelling fixed point")
    den = b + L * t0
    if _is_zero(den):
        raise PoleStart(f"b + L t0 == 0 at t0={float(t0)!r}")
    primary = abs((L * L + b) * (L - t0) / den)
    alt = candidate_limit_alternate(mc, t0)
    if abs(float(primary - alt)) > rel_tol * abs(float(primary)):
        raise OrbitkitError(f"closed forms disagree: {float(primary)!r} vs {float(alt)!r}")
    return primary


def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fibonacci_residual(n: int) -> ExtendedReal:
    """phi^(2n) |phi - F_{n+1}/F_n| with exact Fibonacci numbers.

    The difference cancels about 2n log10(phi) digits, so phi is carried at
    a working precision that grows with n before rounding to double-double.
    """
    if not (1 <= n <= 80):
        raise ValueError("n must lie in [1, 80]")
    fn, fn1 = fibonacci(n), fibonacci(n + 1)
    bits = 128 + int(2 * n * math.log2((1 + math.sqrt(5)) / 2)) + 1
    with mpmath.workprec(bits):
        phi = (1 + mpmath.sqrt(5)) / 2
        val = phi ** (2 * n) * abs(phi - mpmath.mpf(fn1) / fn)
        return ExtendedReal.from_mpf(val)
