"""Eigen-function identities f = phi o mu_alpha o phi^-1 and the series of phi.

If f(phi(theta)) = phi(alpha theta) with phi(0) = L, the candidate sequence
of t0 = phi(theta0) converges to |theta0 phi'(0)| (when phi'(0) != 0, and
then f'(L) = alpha) or to |theta0^2 phi''(0) / 2| (when phi'(0) = 0, and
then f'(L) = alpha^2).

For f(t) = sqrt(C + t) the eigen-function with phi'(0) = 1 satisfies
C + phi(2L theta) = phi(theta)^2, whose Taylor coefficients a_n obey

    a_n ((2L)^n - 2L) = sum_{k=1}^{n-1} a_k a_{n-k}.

``build_phi_series`` solves this recurrence exactly.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy.integrate import simpson

from .catalog import (
    ChebyInverse,
    ExpConjugate,
    FunctionSpec,
    PowerMap,
    ScaledCubeRoot,
    SqrtAffine,
    fixed_point,
    fixed_point_ext,
    format_spec,
)
from .errors import DomainError, NoBracket, NonIntegerGrowth, OutOfDomain, RadicandNegative, WrongOrder
from .numeric import ExtendedReal, as_ext

__all__ = [
    "EigenPair",
    "Conjugated",
    "RationalSeries",
    "SeriesErrorReport",
    "two_cos_pair",
    "sqrt2_second_pair",
    "exp_power_pair",
    "half_exp_pair",
    "exp_two_cos_pair",
    "cheb_pair",
    "cheb_second_pair",
    "builtin_pairs",
    "limit_first_order",
    "limit_second_order",
    "pair_limit",
    "conjugate_limit",
    "conjugate_pair",
    "build_phi_series",
    "phi_series_error",
    "sqrt2_phi_closed",
    "phi_root_for_limit",
    "series_csv",
]


@dataclass(frozen=True)
class EigenPair:
    """phi with its inverse, derivatives at 0, the ratio alpha and the map f."""

    name: str
    phi: Callable[[float], float]
    phi_inv: Callable[[float], float]
    d1: float  # phi'(0)
    d2: float  # phi''(0)
    alpha: float
    L: float
    spec: FunctionSpec
    theta_range: tuple[float, float]  # where f(phi(theta)) = phi(alpha theta) holds

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise ValueError("alpha must lie in (0, 1)")

    @property
    def multiplier(self) -> float:
        """f'(L) predicted by the pair: alpha, or alpha^2 when phi'(0) = 0."""
        return self.alpha if self.d1 != 0 else self.alpha**2

    def residual(self, samples: int = 200) -> float:
        """max |f(phi(theta)) - phi(alpha theta)| over theta_range."""
        lo, hi = self.theta_range
        worst = 0.0
        for th in np.linspace(lo, hi, samples):
            th = float(th)
            worst = max(worst, abs(self.spec(self.phi(th)) - self.phi(self.alpha * th)))
        return worst


def _acos_half_sq(t):
    return math.acos(t / 2.0) ** 2


def two_cos_pair() -> EigenPair:
    """phi = 2cos, alpha = 1/2, f = sqrt(2 + t)."""
    return EigenPair(
        name="two_cos",
        phi=lambda th: 2.0 * math.cos(th),
        phi_inv=lambda t: math.acos(t / 2.0),
        d1=0.0,
        d2=-2.0,
        alpha=0.5,
        L=2.0,
        spec=SqrtAffine(2.0),
        theta_range=(0.0, math.pi),
    )


def _phi2(th):
    return 2.0 * math.cos(math.sqrt(-th)) if th < 0 else 2.0 * math.cosh(math.sqrt(th))


def _phi2_inv(t):
    if t < -2.0:
        raise OutOfDomain(f"t={t!r} below -2")
    return -math.acos(t / 2.0) ** 2 if t <= 2.0 else math.acosh(t / 2.0) ** 2


def sqrt2_second_pair() -> EigenPair:
    """phi = 2cos(sqrt(-theta)) / 2cosh(sqrt(theta)), alpha = 1/4, phi'(0) = 1."""
    return EigenPair(
        name="sqrt2_second",
        phi=_phi2,
        phi_inv=_phi2_inv,
        d1=1.0,
        d2=1.0 / 6.0,
        alpha=0.25,
        L=2.0,
        spec=SqrtAffine(2.0),
        theta_range=(-math.pi**2, 25.0),
    )


def exp_power_pair(alpha: float = 0.5) -> EigenPair:
    """phi = exp, f = t^alpha."""
    return EigenPair(
        name=f"exp_power({alpha!r})",
        phi=math.exp,
        phi_inv=math.log,
        d1=1.0,
        d2=1.0,
        alpha=alpha,
        L=1.0,
        spec=PowerMap(alpha),
        theta_range=(-3.0, 3.0),
    )


def half_exp_pair() -> EigenPair:
    """phi = e^theta / 2, alpha = 1/3, f = (t/4)^(1/3)."""
    return EigenPair(
        name="half_exp",
        phi=lambda th: 0.5 * math.exp(th),
        phi_inv=lambda t: math.log(2.0 * t),
        d1=0.5,
        d2=0.5,
        alpha=1.0 / 3.0,
        L=0.5,
        spec=ScaledCubeRoot(),
        theta_range=(-3.0, 3.0),
    )


def exp_two_cos_pair() -> EigenPair:
    """phi = e^(2cos theta), alpha = 1/2, f = exp(sqrt(2 + ln t))."""
    e2 = math.exp(2.0)
    return EigenPair(
        name="exp_two_cos",
        phi=lambda th: math.exp(2.0 * math.cos(th)),
        phi_inv=lambda t: math.acos(math.log(t) / 2.0),
        d1=0.0,
        d2=-2.0 * e2,
        alpha=0.5,
        L=e2,
        spec=ExpConjugate(),
        theta_range=(0.0, math.pi),
    )


def cheb_pair(K: int, scaled: bool = False) -> EigenPair:
    """phi = cos (or K cos), alpha = 1/K, f = f_K (or K f_K(t/K))."""
    s = float(K) if scaled else 1.0
    return EigenPair(
        name=f"cheb({K}{', scaled' if scaled else ''})",
        phi=lambda th: s * math.cos(th),
        phi_inv=lambda t: math.acos(t / s),
        d1=0.0,
        d2=-s,
        alpha=1.0 / K,
        L=s,
        spec=ChebyInverse(K, scaled),
        theta_range=(0.0, math.pi),
    )


def cheb_second_pair(K: int) -> EigenPair:
    """phi = cos(sqrt(-theta)) / cosh(sqrt(theta)), alpha = 1/K^2, phi'(0) = 1/2."""

    def phi(th):
        return math.cos(math.sqrt(-th)) if th < 0 else math.cosh(math.sqrt(th))

    def inv(t):
        if t < -1.0:
            raise OutOfDomain(f"t={t!r} below -1")
        return -math.acos(t) ** 2 if t <= 1.0 else math.acosh(t) ** 2

    return EigenPair(
        name=f"cheb_second({K})",
        phi=phi,
        phi_inv=inv,
        d1=0.5,
        d2=1.0 / 12.0,
        alpha=1.0 / K**2,
        L=1.0,
        spec=ChebyInverse(K),
        theta_range=(-math.pi**2, 9.0),
    )


def builtin_pairs() -> list[EigenPair]:
    return [
        two_cos_pair(),
        sqrt2_second_pair(),
        exp_power_pair(0.5),
        exp_power_pair(0.25),
        half_exp_pair(),
        exp_two_cos_pair(),
        cheb_pair(3),
        cheb_pair(4, scaled=True),
        cheb_second_pair(3),
    ]


def limit_first_order(ep: EigenPair, t0: float) -> float:
    """|phi^-1(t0) phi'(0)|."""
    if ep.d1 == 0:
        raise WrongOrder("phi'(0) = 0: use limit_second_order")
    return abs(ep.phi_inv(t0) * ep.d1)


def limit_second_order(ep: EigenPair, t0: float) -> float:
    """|phi^-1(t0)^2 phi''(0) / 2|, for phi'(0) = 0."""
    if ep.d1 != 0:
        raise WrongOrder("phi'(0) != 0: use limit_first_order")
    if ep.d2 == 0:
        raise WrongOrder("phi''(0) = 0 as well: higher-order case not handled")
    th = ep.phi_inv(t0)
    return abs(th**2 * (ep.d2 / 2.0))


def pair_limit(ep: EigenPair, t0: float) -> float:
    return limit_first_order(ep, t0) if ep.d1 != 0 else limit_second_order(ep, t0)


# -- conjugation --------------------------------------------------------------


@dataclass(frozen=True)
class Conjugated(FunctionSpec):
    """beta + f(t - beta) (kind 'translate') or beta f(t / beta) (kind 'scale')."""

    base: FunctionSpec
    kind: str
    beta: float
    family = "conjugated"

    def __post_init__(self):
        if self.kind not in ("translate", "scale"):
            raise ValueError("kind must be 'translate' or 'scale'")
        if self.kind == "scale" and not self.beta > 0:
            raise ValueError("scale conjugation needs beta > 0")

    def _inner(self, t):
        return t - self.beta if self.kind == "translate" else t / self.beta

    def _outer(self, y):
        return y + self.beta if self.kind == "translate" else y * self.beta

    def domain(self):
        lo, hi = self.base.domain()
        return self._outer(lo), self._outer(hi)

    def in_domain(self, t):
        return self.base.in_domain(self._inner(t))

    def _f(self, t):
        return self._outer(self.base(self._inner(t)))

    def _ext(self, t):
        return self._outer(self.base.ext(self._inner(t)))

    def deriv(self, t):
        return self.base.deriv(self._inner(t))

    def deriv2(self, t):
        d2 = self.base.deriv2(self._inner(t))
        return d2 if self.kind == "translate" else d2 / self.beta

    def closed_fixed_point(self):
        L, m, s = self.base.closed_fixed_point()
        if self.kind == "translate":
            return L + self.beta, m, s
        return L * self.beta, m, s / self.beta

    def ext_fixed_point(self):
        return self._outer(fixed_point_ext(self.base))

    def __str__(self):
        return f"{self.kind}[{self.beta!r}]({format_spec(self.base)})"


def conjugate_pair(kind: str, base: EigenPair, beta: float) -> EigenPair:
    """The eigen pair of the translated or scaled map."""
    spec = Conjugated(base.spec, kind, beta)
    if kind == "translate":
        phi = lambda th: base.phi(th) + beta
        inv = lambda t: base.phi_inv(t - beta)
        d1, d2, L = base.d1, base.d2, base.L + beta
    else:
        phi = lambda th: beta * base.phi(th)
        inv = lambda t: base.phi_inv(t / beta)
        d1, d2, L = beta * base.d1, beta * base.d2, beta * base.L
    return EigenPair(f"{kind}[{beta!r}]({base.name})", phi, inv, d1, d2, base.alpha, L, spec, base.theta_range)


def conjugate_limit(kind: str, base: EigenPair, t0: float, beta: float) -> float:
    """|theta0 phi'(0)| with theta0 = phi^-1(t0 - beta), or |theta0 beta phi'(0)|
    with theta0 = phi^-1(t0 / beta)."""
    if base.d1 == 0:
        raise WrongOrder("conjugate_limit needs phi'(0) != 0")
    if kind == "translate":
        return abs(base.phi_inv(t0 - beta) * base.d1)
    if kind == "scale":
        if beta == 0:
            raise ValueError("beta must be nonzero")
        return abs(base.phi_inv(t0 / beta) * beta * base.d1)
    raise ValueError("kind must be 'translate' or 'scale'")


# -- exact series ------------------------------------------------------------


@dataclass(frozen=True)
class RationalSeries:
    """phi^(n)(0) for n = 0..N of the eigen-function of sqrt(C + t)."""

    C: Union[Fraction, float]
    L: Union[Fraction, ExtendedReal]
    alpha: Union[Fraction, ExtendedReal]
    derivs: tuple

    @property
    def order(self) -> int:
        return len(self.derivs) - 1

    @property
    def exact(self) -> bool:
        return all(isinstance(d, Fraction) for d in self.derivs)

    def coeffs(self, n: Optional[int] = None) -> list:
        """Taylor coefficients phi^(k)(0)/k! for k = 0..n."""
        n = self.order if n is None else n
        if n > self.order:
            raise ValueError(f"series only has order {self.order}")
        return [self.derivs[k] / math.factorial(k) for k in range(n + 1)]

    def poly(self, n: Optional[int] = None) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs(n)])

    def __call__(self, theta, n: Optional[int] = None):
        """p_n(theta) in binary64 (vectorised over numpy arrays)."""
        return np.polynomial.polynomial.polyval(theta, self.poly(n))

    def deriv_poly(self, n: Optional[int] = None) -> np.ndarray:
        return np.polynomial.polynomial.polyder(self.poly(n))


def _gauss_binomial_rows(r: int, m_max: int):
    """Rows G(m, j) of r-binomial coefficients for m = 0..m_max."""
    rows = [[1]]
    for m in range(1, m_max + 1):
        prev = rows[-1]
        row = [1] * (m + 1)
        rpow = 1
        for j in range(1, m):
            rpow *= r
            row[j] = prev[j - 1] + rpow * prev[j]
        rows.append(row)
    return rows


def _series_integer_growth(r: int, N: int) -> list[Fraction]:
    # a_n = A_n / P_n with P_n = prod_{j=2}^n (r^j - r); the ratio
    # P_{n-1} / (P_k P_{n-k}) is the r-binomial G(n-2, k-1), so A_n is an integer
    rows = _gauss_binomial_rows(r, max(N - 2, 0))
    A = [0, 1]
    P = [1, 1]
    for n in range(2, N + 1):
        g = rows[n - 2]
        A.append(sum(A[k] * A[n - k] * g[k - 1] for k in range(1, n)))
        P.append(P[-1] * (r**n - r))
    return [Fraction(A[n], P[n]) for n in range(1, N + 1)]


def _series_generic(r, N: int) -> list:
    a = [None, r / r]  # 1 in the type of r
    for n in range(2, N + 1):
        denom = r**n - r
        if denom == 0:
            raise NonIntegerGrowth(f"(2L)^{n} - 2L vanishes")
        a.append(sum(a[k] * a[n - k] for k in range(1, n)) / denom)
    return a[1:]


def build_phi_series(C, n_terms: int) -> RationalSeries:
    """phi^(n)(0) for n = 0..n_terms, phi(0) = L, phi'(0) = 1.

    Exact rationals when L is rational (1 + 4C a rational square),
    double-double otherwise.
    """
    if not (1 <= n_terms <= 200):
        raise ValueError("n_terms must lie in [1, 200]")
    if isinstance(C, Rational):
        Cq = Fraction(C)
    elif isinstance(C, str):
        Cq = Fraction(C)
    else:
        Cq = Fraction(float(C)).limit_denominator(10**12)
        if float(Cq) != float(C):
            Cq = Fraction(float(C))
    if not Cq > 0:
        raise ValueError("C must be positive")
    disc = 1 + 4 * Cq
    rn, rd = math.isqrt(disc.numerator), math.isqrt(disc.denominator)
    if rn * rn == disc.numerator and rd * rd == disc.denominator:
        L = (1 + Fraction(rn, rd)) / 2
        r = 2 * L
        if r.denominator == 1:
            a = _series_integer_growth(int(r), n_terms)
        else:
            a = _series_generic(r, n_terms)
        alpha = 1 / r
    else:
        from .numeric import ext_sqrt

        L = (ext_sqrt(as_ext(disc)) + 1) / 2
        r = L * 2
        if r <= 1:
            raise NonIntegerGrowth("2L <= 1")
        a = _series_generic(r, n_terms)
        alpha = ExtendedReal(1.0) / r
    derivs = [L] + [a[n - 1] * math.factorial(n) for n in range(1, n_terms + 1)]
    return RationalSeries(C=Cq, L=L, alpha=alpha, derivs=tuple(derivs))


@dataclass(frozen=True)
class SeriesErrorReport:
    n: int
    max_error: float
    avg_error: float
    theta_range: tuple[float, float]
    argmax: float = 0.0


def phi_series_error(
    rs: RationalSeries,
    n: int,
    theta_range: tuple[float, float] = (-2.0, 2.0),
    quad_points: int = 129,
    grid_points: int = 1000,
) -> SeriesErrorReport:
    """E_n(theta) = |sqrt(C + p_n(theta)) - p_n(alpha theta)|: grid max and mean.

    The mean is a composite Simpson integral over ``quad_points`` nodes
    divided by the interval length.
    """
    if quad_points < 65 or quad_points % 2 == 0:
        raise ValueError("quad_points must be odd and at least 65")
    lo, hi = map(float, theta_range)
    if not lo < hi:
        raise ValueError("empty theta range")
    coeffs = rs.poly(n)
    C = float(rs.C)
    alpha = float(rs.alpha)

    def E(theta):
        p = np.polynomial.polynomial.polyval(theta, coeffs)
        rad = C + p
        bad = np.nonzero(rad < 0)[0]
        if bad.size:
            th = float(np.atleast_1d(theta)[bad[0]])
            raise RadicandNegative(f"C + p_{n}(theta) < 0 at theta={th!r}", theta=th)
        return np.abs(np.sqrt(rad) - np.polynomial.polynomial.polyval(alpha * theta, coeffs))

    grid = np.linspace(lo, hi, grid_points)
    eg = E(grid)
    nodes = np.linspace(lo, hi, quad_points)
    avg = float(simpson(E(nodes), x=nodes)) / (hi - lo)
    mx = float(eg.max())
    # Simpson can undershoot zero or overshoot the grid max on spiky integrands
    avg = min(max(avg, 0.0), mx)
    return SeriesErrorReport(n=n, max_error=mx, avg_error=avg, theta_range=(lo, hi), argmax=float(grid[eg.argmax()]))


def sqrt2_phi_closed(t0: float) -> float:
    """Candidate limit for sqrt(2 + t): arccos(t0/2)^2 on [-2, 2], arccosh(t0/2)^2 above."""
    t0 = float(t0)
    if t0 < -2.0:
        raise OutOfDomain(f"t0={t0!r} below -2")
    if t0 <= 2.0:
        return math.acos(t0 / 2.0) ** 2
    return math.acosh(t0 / 2.0) ** 2


def phi_root_for_limit(
    rs: RationalSeries, target: float = 0.0, n: Optional[int] = None, scan_points: int = 4001
) -> float:
    """theta nearest 0 with p_n(theta) = target (bisection, then Newton)."""
    c = rs.poly(n)
    dc = np.polynomial.polynomial.polyder(c)
    g = lambda th: float(np.polynomial.polynomial.polyval(th, c)) - target
    if g(0.0) == 0.0:
        return 0.0
    Lf = float(rs.L)
    span = 2.0 * Lf * Lf
    grid = np.linspace(-span, span, scan_points)
    vals = np.polynomial.polynomial.polyval(grid, c) - target
    brackets = [
        (float(grid[i]), float(grid[i + 1]))
        for i in range(len(grid) - 1)
        if vals[i] == 0.0 or np.sign(vals[i]) != np.sign(vals[i + 1])
    ]
    if not brackets:
        raise NoBracket(f"no sign change of p_n - {target!r} on [{-span!r}, {span!r}]")
    a, b = min(brackets, key=lambda ab: min(abs(ab[0]), abs(ab[1])))
    ga = g(a)
    if ga == 0.0:
        return a
    for _ in range(60):
        mid = 0.5 * (a + b)
        gm = g(mid)
        if gm == 0.0:
            return mid
        if (gm < 0) == (ga < 0):
            a, ga = mid, gm
        else:
            b = mid
        if b - a < 1e-6:
            break
    th = 0.5 * (a + b)
    for _ in range(20):
        step = g(th) / float(np.polynomial.polynomial.polyval(th, dc))
        th -= step
        if abs(step) <= 1e-15 * max(1.0, abs(th)):
            break
    return th


def series_csv(rs: RationalSeries, n: Optional[int] = None) -> str:
    """CSV of Taylor coefficients: n, numerator, denominator, decimal (30 digits)."""
    import mpmath

    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["n", "numerator", "denominator", "decimal"])
    for k, q in enumerate(rs.coeffs(n)):
        with mpmath.workdps(40):
            if isinstance(q, Fraction):
                x, num, den = mpmath.mpf(q.numerator) / q.denominator, q.numerator, q.denominator
            else:
                x, num, den = as_ext(q).to_mpf(), "", ""
            w.writerow([k, num, den, mpmath.nstr(x, 30, strip_zeros=False)])
    return out.getvalue()
