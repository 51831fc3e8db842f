"""Catalog of contraction families with analytic derivatives and fixed points.

Every family is a frozen dataclass deriving from :class:`FunctionSpec`.
A spec evaluates in binary64 (``spec(t)``) and in double-double
(``spec.ext(t)``), and knows its first and second derivatives, its real
domain and, in closed form, its attracting fixed point ``(L, m, s)``.

Canonical text form (used by the CLI and config files)::

    sqrt_affine(c=2)   mobius(a=3,b=6,d=4)   cheb_inverse(k=5,scaled=false)

Family table (fixed point L, multiplier m = f'(L)):

=====================  =====================================  ==================
family                 f(t)                                   L
=====================  =====================================  ==================
sqrt_affine(c)         sqrt(c + t)                            (1+sqrt(1+4c))/2
kth_root(l, k)         (l^k - l + t)^(1/k)                    l
mobius(a, b, d)        (a t + b)/(t + d)                      attracting root
log_shift(l)           ln(e^l - l + t)                        l
rational_demo()        6 - (2t + 16)/(t^2 + 1)                5
power_map(alpha)       t^alpha                                1
scaled_cube_root()     (t/4)^(1/3)                            1/2
exp_conjugate()        exp(sqrt(2 + ln t))                    e^2
cheb_inverse(k, s)     f_K(t)  or  K f_K(t/K)                 1  or  K
continued_fraction     a + b/t                                attracting root
nonsmooth_demo()       1 + g(t-1), g = .5z - .24z^2 + .024z^2|z|   1
quartic_demo()         1 + g(t-1), g = z/2 - z^4/12           1
=====================  =====================================  ==================
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import ClassVar, Optional

import numpy as np

from . import chebyshev as _cheb
from .errors import DomainError, NoFixedPoint, Unsupported
from .numeric import (
    ExtendedReal,
    as_ext,
    check_finite,
    ext_acos,
    ext_acosh,
    ext_cos,
    ext_cosh,
    ext_exp,
    ext_log,
    ext_pow,
    ext_root,
    ext_sqrt,
)

__all__ = [
    "FunctionSpec",
    "SqrtAffine",
    "KthRoot",
    "Mobius",
    "LogShift",
    "RationalDemo",
    "PowerMap",
    "ScaledCubeRoot",
    "ExpConjugate",
    "ChebyInverse",
    "ContinuedFraction",
    "NonSmoothDemo",
    "QuarticDemo",
    "FixedPointInfo",
    "RootLikeReport",
    "FAMILIES",
    "parse_spec",
    "format_spec",
    "ext_eval",
    "fixed_point",
    "fixed_point_ext",
    "multiplier_ext",
    "newton_fixed_point",
    "contraction_interval",
    "verify_root_like",
    "widest_root_like_interval",
]


@dataclass(frozen=True)
class FixedPointInfo:
    L: float
    m: float
    s: Optional[float]
    attracting: bool


@dataclass(frozen=True)
class RootLikeReport:
    interval: tuple[float, float]
    is_contraction: bool
    fprime_positive: bool
    fsecond_negative: bool
    fixed_point_inside: bool
    verdict: bool


class FunctionSpec:
    """Base class for catalog members.

    Subclasses implement ``_f``, ``_ext``, ``deriv``, ``deriv2``, ``domain``
    and ``closed_fixed_point``.
    """

    family: ClassVar[str] = ""
    # Newton seed offset from the closed-form fixed point
    newton_offset: ClassVar[float] = 0.5

    def __call__(self, t: float) -> float:
        t = float(t)
        self._check(t)
        return check_finite(self._f(t), f"{self.family}({t!r})")

    def ext(self, t) -> ExtendedReal:
        t = as_ext(t)
        self._check(float(t))
        return self._ext(t)

    def domain(self) -> tuple[float, float]:
        """Open-or-closed real interval (lo, hi); see ``in_domain``."""
        return (-math.inf, math.inf)

    def in_domain(self, t: float) -> bool:
        lo, hi = self.domain()
        return lo <= t <= hi and math.isfinite(t)

    def _check(self, t: float) -> None:
        if not self.in_domain(t):
            raise DomainError(f"t={t!r} outside the domain {self.domain()} of {format_spec(self)}")

    def closed_fixed_point(self) -> tuple[float, float, float]:
        raise NotImplementedError

    def exact_fixed_point(self) -> Optional[tuple[Fraction, Fraction, Fraction]]:
        """(L, m, s) as exact rationals when they are rational, else None."""
        return None

    def deriv(self, t: float) -> float:
        raise NotImplementedError

    def deriv2(self, t: float) -> Optional[float]:
        raise NotImplementedError

    def __str__(self):
        return format_spec(self)


def _as_float(x) -> float:
    return float(x)


# -- families ---------------------------------------------------------------


@dataclass(frozen=True)
class SqrtAffine(FunctionSpec):
    C: float
    family: ClassVar[str] = "sqrt_affine"

    def __post_init__(self):
        if not self.C > -0.25:
            raise ValueError("sqrt_affine needs c > -1/4 for a real fixed point")

    def domain(self):
        return (-self.C, math.inf)

    def _f(self, t):
        return math.sqrt(self.C + t)

    def _ext(self, t):
        return ext_sqrt(as_ext(self.C) + t)

    def deriv(self, t):
        self._check(t)
        return 0.5 / math.sqrt(self.C + t)

    def deriv2(self, t):
        self._check(t)
        return -0.25 * (self.C + t) ** -1.5

    def closed_fixed_point(self):
        L = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * self.C))
        return L, 0.5 / L, -0.25 / L**3

    def ext_fixed_point(self):
        return (ext_sqrt(as_ext(4.0) * self.C + 1.0) + 1.0) / 2

    def exact_fixed_point(self):
        disc = 1 + 4 * Fraction(self.C)
        rn, rd = math.isqrt(disc.numerator), math.isqrt(disc.denominator)
        if rn * rn != disc.numerator or rd * rd != disc.denominator:
            return None
        L = (1 + Fraction(rn, rd)) / 2
        return L, 1 / (2 * L), -1 / (4 * L**3)


@dataclass(frozen=True)
class KthRoot(FunctionSpec):
    L: float
    k: int
    family: ClassVar[str] = "kth_root"

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 2:
            raise ValueError("kth_root needs an integer k >= 2")
        object.__setattr__(self, "k", int(self.k))
        if not (self.L > 0 and self.k * self.L ** (self.k - 1) > 1):
            raise ValueError("kth_root needs L > 0 with k L^(k-1) > 1 (attracting)")

    @property
    def shift(self) -> float:
        return self.L**self.k - self.L

    def domain(self):
        return (-self.shift, math.inf)

    def _f(self, t):
        u = self.shift + t
        if self.k == 2:
            return math.sqrt(u)
        return u ** (1.0 / self.k)

    def _ext(self, t):
        L = as_ext(self.L)
        return ext_root(L**self.k - L + t, self.k)

    def deriv(self, t):
        self._check(t)
        u = self.shift + t
        return u ** (1.0 / self.k - 1.0) / self.k

    def deriv2(self, t):
        self._check(t)
        u = self.shift + t
        k = self.k
        return (1.0 / k) * (1.0 / k - 1.0) * u ** (1.0 / k - 2.0)

    def closed_fixed_point(self):
        L, k = self.L, self.k
        m = 1.0 / (k * L ** (k - 1))
        s = (1.0 / k) * (1.0 / k - 1.0) * L ** (1 - 2 * k)
        return L, m, s

    def ext_fixed_point(self):
        return as_ext(self.L)

    def exact_fixed_point(self):
        L, k = Fraction(self.L), self.k
        return L, 1 / (k * L ** (k - 1)), Fraction(1, k) * (Fraction(1, k) - 1) / L ** (2 * k - 1)


def _mobius_attracting(a, b, d):
    disc = (a - d) ** 2 + 4 * b
    if disc <= 0:
        return None
    r = math.sqrt(disc)
    lam1, lam2 = 0.5 * (a + d + r), 0.5 * (a + d - r)
    lam, mu = (lam1, lam2) if abs(lam1) >= abs(lam2) else (lam2, lam1)
    if abs(mu) >= abs(lam):
        return None
    return lam - d, mu / lam


@dataclass(frozen=True)
class Mobius(FunctionSpec):
    a: float
    b: float
    d: float
    family: ClassVar[str] = "mobius"

    def __post_init__(self):
        # Fractions are kept exact so that ext() sees the rational coefficients
        for name in ("a", "b", "d"):
            v = getattr(self, name)
            if not isinstance(v, Fraction):
                object.__setattr__(self, name, float(v))
        if self.b == self.a * self.d:
            raise ValueError("mobius needs b != a*d (otherwise constant)")

    def _attracting(self):
        fp = _mobius_attracting(float(self.a), float(self.b), float(self.d))
        if fp is None:
            raise NoFixedPoint(f"{format_spec(self)} has no attracting real fixed point")
        return fp

    def domain(self):
        try:
            L, _ = self._attracting()
        except NoFixedPoint:
            return (-float(self.d), math.inf)
        d = float(self.d)
        return (-d, math.inf) if L > -d else (-math.inf, -d)

    def in_domain(self, t):
        lo, hi = self.domain()
        return lo < t < hi and math.isfinite(t)

    def _floats(self):
        return float(self.a), float(self.b), float(self.d)

    def _f(self, t):
        a, b, d = self._floats()
        return (a * t + b) / (t + d)

    def _ext(self, t):
        a, b, d = as_ext(self.a), as_ext(self.b), as_ext(self.d)
        return (t * a + b) / (t + d)

    def deriv(self, t):
        self._check(t)
        a, b, d = self._floats()
        return (a * d - b) / (t + d) ** 2

    def deriv2(self, t):
        self._check(t)
        a, b, d = self._floats()
        return 2.0 * (b - a * d) / (t + d) ** 3

    def closed_fixed_point(self):
        L, m = self._attracting()
        a, b, d = self._floats()
        s = 2.0 * (b - a * d) / (L + d) ** 3
        return L, m, s

    def ext_fixed_point(self):
        a, b, d = as_ext(self.a), as_ext(self.b), as_ext(self.d)
        r = ext_sqrt((a - d) ** 2 + b * 4)
        L_float, _ = self._attracting()
        plus = (a - d + r) / 2
        minus = (a - d - r) / 2
        return plus if abs(float(plus) - L_float) <= abs(float(minus) - L_float) else minus

    def exact_fixed_point(self):
        from .mobius import MobiusCoeffs, eigen, lms_from_abd

        mc = MobiusCoeffs(Fraction(self.a), Fraction(self.b), Fraction(self.d))
        L = eigen(mc).L
        if not isinstance(L, Fraction):
            return None
        q = lms_from_abd(mc, L)
        return q.L, q.m, q.s

    def coeffs(self):
        from .mobius import MobiusCoeffs

        return MobiusCoeffs(self.a, self.b, self.d)


@dataclass(frozen=True)
class LogShift(FunctionSpec):
    L: float
    family: ClassVar[str] = "log_shift"

    def __post_init__(self):
        if not self.L > 0:
            raise ValueError("log_shift needs L > 0 (so that m = e^-L < 1)")

    @property
    def shift(self):
        return math.exp(self.L) - self.L

    def domain(self):
        return (-self.shift, math.inf)

    def in_domain(self, t):
        return -self.shift < t < math.inf

    def _f(self, t):
        return math.log(self.shift + t)

    def _ext(self, t):
        L = as_ext(self.L)
        return ext_log(ext_exp(L) - L + t)

    def deriv(self, t):
        self._check(t)
        return 1.0 / (self.shift + t)

    def deriv2(self, t):
        self._check(t)
        return -1.0 / (self.shift + t) ** 2

    def closed_fixed_point(self):
        m = math.exp(-self.L)
        return self.L, m, -m * m

    def ext_fixed_point(self):
        return as_ext(self.L)


@dataclass(frozen=True)
class RationalDemo(FunctionSpec):
    family: ClassVar[str] = "rational_demo"

    def _f(self, t):
        return 6.0 - (2.0 * t + 16.0) / (t * t + 1.0)

    def _ext(self, t):
        return 6 - (t * 2 + 16) / (t * t + 1)

    def deriv(self, t):
        return (2.0 * t * t + 32.0 * t - 2.0) / (t * t + 1.0) ** 2

    def deriv2(self, t):
        D = t * t + 1.0
        N = 2.0 * t * t + 32.0 * t - 2.0
        return ((4.0 * t + 32.0) * D - 4.0 * t * N) / D**3

    def closed_fixed_point(self):
        return 5.0, self.deriv(5.0), self.deriv2(5.0)

    def ext_fixed_point(self):
        return ExtendedReal(5.0)


@dataclass(frozen=True)
class PowerMap(FunctionSpec):
    alpha: float
    family: ClassVar[str] = "power_map"

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise ValueError("power_map needs 0 < alpha < 1")

    def domain(self):
        return (0.0, math.inf)

    def in_domain(self, t):
        return 0.0 < t < math.inf

    def _f(self, t):
        return t**self.alpha

    def _ext(self, t):
        return ext_pow(t, self.alpha)

    def deriv(self, t):
        self._check(t)
        return self.alpha * t ** (self.alpha - 1.0)

    def deriv2(self, t):
        self._check(t)
        a = self.alpha
        return a * (a - 1.0) * t ** (a - 2.0)

    def closed_fixed_point(self):
        a = self.alpha
        return 1.0, a, a * (a - 1.0)

    def ext_fixed_point(self):
        return ExtendedReal(1.0)


_QUARTER_CBRT = 0.25 ** (1.0 / 3.0)


@dataclass(frozen=True)
class ScaledCubeRoot(FunctionSpec):
    family: ClassVar[str] = "scaled_cube_root"

    def domain(self):
        return (0.0, math.inf)

    def in_domain(self, t):
        return 0.0 < t < math.inf

    def _f(self, t):
        return (t / 4.0) ** (1.0 / 3.0)

    def _ext(self, t):
        return ext_root(t / 4, 3)

    def deriv(self, t):
        self._check(t)
        return _QUARTER_CBRT * t ** (-2.0 / 3.0) / 3.0

    def deriv2(self, t):
        self._check(t)
        return -2.0 / 9.0 * _QUARTER_CBRT * t ** (-5.0 / 3.0)

    def closed_fixed_point(self):
        return 0.5, 1.0 / 3.0, self.deriv2(0.5)

    def ext_fixed_point(self):
        return ExtendedReal(0.5)


@dataclass(frozen=True)
class ExpConjugate(FunctionSpec):
    family: ClassVar[str] = "exp_conjugate"

    def domain(self):
        return (math.exp(-2.0), math.inf)

    def in_domain(self, t):
        return t > 0 and math.log(t) >= -2.0 and math.isfinite(t)

    def _f(self, t):
        return math.exp(math.sqrt(2.0 + math.log(t)))

    def _ext(self, t):
        return ext_exp(ext_sqrt(ext_log(t) + 2))

    def deriv(self, t):
        self._check(t)
        r = math.sqrt(2.0 + math.log(t))
        return math.exp(r) / (2.0 * r * t)

    def deriv2(self, t):
        self._check(t)
        r = math.sqrt(2.0 + math.log(t))
        dr = 1.0 / (2.0 * r * t)
        g = math.exp(r)
        # d/dt [g / (2 r t)]
        return g * dr / (2.0 * r * t) - g * (2.0 * dr * t + 2.0 * r) / (2.0 * r * t) ** 2

    def closed_fixed_point(self):
        L = math.exp(2.0)
        return L, 0.25, self.deriv2(L)

    def ext_fixed_point(self):
        return ext_exp(ExtendedReal(2.0))


@dataclass(frozen=True)
class ChebyInverse(FunctionSpec):
    K: int
    scaled: bool = False
    family: ClassVar[str] = "cheb_inverse"

    def __post_init__(self):
        if int(self.K) != self.K or not (2 <= self.K <= 64):
            raise ValueError("cheb_inverse needs an integer 2 <= K <= 64")
        object.__setattr__(self, "K", int(self.K))
        object.__setattr__(self, "scaled", bool(self.scaled))

    def domain(self):
        return (-float(self.K) if self.scaled else -1.0, math.inf)

    def _f(self, t):
        return _cheb.f_k(self.K, t, self.scaled)

    def _ext(self, t):
        K = self.K
        x = t / K if self.scaled else t
        if x <= 1:
            if x < -1:  # rounding in t/K at the branch endpoint
                x = ExtendedReal(-1.0)
            y = ext_cos(ext_acos(x) / K)
        else:
            y = ext_cosh(ext_acosh(x) / K)
        return y * K if self.scaled else y

    def deriv(self, t):
        self._check(t)
        return _cheb.f_k_derivative(self.K, t, self.scaled)

    def deriv2(self, t):
        self._check(t)
        return _cheb.f_k_second_derivative(self.K, t, self.scaled)

    def closed_fixed_point(self):
        K = self.K
        L = float(K) if self.scaled else 1.0
        s = -(K * K - 1) / (3.0 * K**4)
        if self.scaled:
            s /= K
        return L, 1.0 / (K * K), s

    def ext_fixed_point(self):
        return ExtendedReal(float(self.K) if self.scaled else 1.0)


@dataclass(frozen=True)
class ContinuedFraction(FunctionSpec):
    a: float
    b: float
    family: ClassVar[str] = "continued_fraction"

    def __post_init__(self):
        if self.b == 0:
            raise ValueError("continued_fraction needs b != 0")

    def as_mobius(self) -> Mobius:
        return Mobius(self.a, self.b, 0.0)

    def domain(self):
        return self.as_mobius().domain()

    def in_domain(self, t):
        return self.as_mobius().in_domain(t)

    def _f(self, t):
        return self.a + self.b / t

    def _ext(self, t):
        return as_ext(self.b) / t + self.a

    def deriv(self, t):
        self._check(t)
        return -self.b / (t * t)

    def deriv2(self, t):
        self._check(t)
        return 2.0 * self.b / t**3

    def closed_fixed_point(self):
        return self.as_mobius().closed_fixed_point()

    def ext_fixed_point(self):
        return self.as_mobius().ext_fixed_point()


@dataclass(frozen=True)
class NonSmoothDemo(FunctionSpec):
    """f(t) = 1 + g(t-1), g(z) = .5z - .24z^2 + .024z^2|z|; g''' jumps at 0."""

    family: ClassVar[str] = "nonsmooth_demo"

    def _f(self, t):
        z = t - 1.0
        return 1.0 + (0.5 * z - 0.24 * z * z + 0.024 * z * z * abs(z))

    def _ext(self, t):
        z = t - 1
        return 1 + (z * 0.5 - z * z * 0.24 + z * z * abs(z) * 0.024)

    def deriv(self, t):
        z = t - 1.0
        return 0.5 - 0.48 * z + 0.072 * z * abs(z)

    def deriv2(self, t):
        return -0.48 + 0.144 * abs(t - 1.0)

    def closed_fixed_point(self):
        return 1.0, 0.5, -0.48

    def ext_fixed_point(self):
        return ExtendedReal(1.0)


@dataclass(frozen=True)
class QuarticDemo(FunctionSpec):
    """f(t) = 1 + g(t-1), g(z) = z/2 - z^4/12; f''(1) = 0."""

    family: ClassVar[str] = "quartic_demo"

    def _f(self, t):
        z = t - 1.0
        return 1.0 + (0.5 * z - z**4 / 12.0)

    def _ext(self, t):
        z = t - 1
        return 1 + (z * 0.5 - z**4 / 12)

    def deriv(self, t):
        z = t - 1.0
        return 0.5 - z**3 / 3.0

    def deriv2(self, t):
        z = t - 1.0
        return -z * z

    def closed_fixed_point(self):
        return 1.0, 0.5, 0.0

    def ext_fixed_point(self):
        return ExtendedReal(1.0)


FAMILIES = {
    cls.family: cls
    for cls in (
        SqrtAffine,
        KthRoot,
        Mobius,
        LogShift,
        RationalDemo,
        PowerMap,
        ScaledCubeRoot,
        ExpConjugate,
        ChebyInverse,
        ContinuedFraction,
        NonSmoothDemo,
        QuarticDemo,
    )
}

# text-form key -> dataclass field, per family
_KEYS = {
    "sqrt_affine": {"c": "C"},
    "kth_root": {"l": "L", "k": "k"},
    "mobius": {"a": "a", "b": "b", "d": "d"},
    "log_shift": {"l": "L"},
    "power_map": {"alpha": "alpha"},
    "cheb_inverse": {"k": "K", "scaled": "scaled"},
    "continued_fraction": {"a": "a", "b": "b"},
}
_INT_FIELDS = {"k", "K"}
_BOOL_FIELDS = {"scaled"}

_SPEC_RE = re.compile(r"^\s*([a-z_][a-z0-9_]*)\s*\((.*)\)\s*$")
_NUM_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?(/[+-]?\d+)?$")


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    if key in _BOOL_FIELDS:
        low = raw.lower()
        if low in ("true", "1", "yes"):
            return True
        if low in ("false", "0", "no"):
            return False
        raise ValueError(f"expected true/false for {key}, got {raw!r}")
    if not _NUM_RE.match(raw):
        raise ValueError(f"bad numeric literal {raw!r} for {key}")
    q = Fraction(raw)
    if key in _INT_FIELDS:
        if q.denominator != 1:
            raise ValueError(f"{key} must be an integer, got {raw!r}")
        return int(q)
    return float(q)


def parse_spec(text: str) -> FunctionSpec:
    """Parse the canonical text form, e.g. ``mobius(a=3,b=6,d=4)``."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse function spec {text!r}")
    name, body = m.group(1), m.group(2).strip()
    if name not in FAMILIES:
        raise ValueError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}")
    keys = _KEYS.get(name, {})
    kwargs = {}
    if body:
        for part in body.split(","):
            if "=" not in part:
                raise ValueError(f"expected key=value in {text!r}, got {part!r}")
            k, v = (s.strip() for s in part.split("=", 1))
            if k not in keys:
                raise ValueError(f"unknown parameter {k!r} for {name}")
            field = keys[k]
            if field in kwargs:
                raise ValueError(f"duplicate parameter {k!r}")
            kwargs[field] = _parse_value(field, v)
    missing = [k for k, f in keys.items() if f not in kwargs and not (name == "cheb_inverse" and f == "scaled")]
    if missing:
        raise ValueError(f"{name} is missing parameter(s): {', '.join(missing)}")
    return FAMILIES[name](**kwargs)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    v = float(v)
    if v.is_integer():
        return str(int(v))
    return repr(v)


def format_spec(spec: FunctionSpec) -> str:
    keys = _KEYS.get(spec.family, {})
    parts = [f"{k}={_fmt(getattr(spec, f))}" for k, f in keys.items()]
    return f"{spec.family}({','.join(parts)})"


# -- operations -------------------------------------------------------------


def ext_eval(spec: FunctionSpec, t) -> ExtendedReal:
    """Evaluate ``spec`` at ``t`` in double-double precision."""
    return spec.ext(t)


def newton_fixed_point(spec: FunctionSpec, seed: float, tol: float = 1e-14, max_iter: int = 100) -> float:
    """Solve f(t) = t by Newton's method from ``seed``."""
    t = float(seed)
    for _ in range(max_iter):
        try:
            r = spec(t) - t
            dr = spec.deriv(t) - 1.0
        except DomainError as exc:
            raise NoFixedPoint(f"Newton left the domain of {format_spec(spec)}: {exc}") from exc
        if dr == 0.0:
            raise NoFixedPoint("Newton hit a stationary point")
        step = r / dr
        t -= step
        if not math.isfinite(t):
            raise NoFixedPoint("Newton diverged")
        if not spec.in_domain(t):
            raise NoFixedPoint(f"Newton left the domain of {format_spec(spec)} at t={t!r}")
        if abs(spec(t) - t) <= tol * max(1.0, abs(t)):
            return t
    raise NoFixedPoint(f"Newton did not converge from seed {seed!r} for {format_spec(spec)}")


def fixed_point(spec: FunctionSpec) -> FixedPointInfo:
    """Closed-form (L, m, s) of the family's attracting fixed point.

    Each closed form is confirmed by a Newton polish seeded at
    ``L + newton_offset``; a residual above 1e-12 triggers the Newton value.
    """
    L, m, s = spec.closed_fixed_point()
    if abs(spec(L) - L) > 1e-12 * max(1.0, abs(L)):
        L = newton_fixed_point(spec, L + spec.newton_offset)
        m = spec.deriv(L)
        s = spec.deriv2(L)
    return FixedPointInfo(L=L, m=m, s=s, attracting=abs(m) < 1.0)


def fixed_point_ext(spec: FunctionSpec) -> ExtendedReal:
    """The attracting fixed point in double-double precision."""
    if hasattr(spec, "ext_fixed_point"):
        L = spec.ext_fixed_point()
    else:  # pragma: no cover - every family defines it
        L = as_ext(fixed_point(spec).L)
    # polish: Newton with a binary64 derivative converges to ~1e-31
    m1 = spec.deriv(float(L)) - 1.0
    for _ in range(3):
        r = spec.ext(L) - L
        if r.is_zero():
            break
        L = L - r / m1
    return L


def multiplier_ext(spec: FunctionSpec, L: Optional[ExtendedReal] = None) -> ExtendedReal:
    """f'(L) in double-double precision.

    A binary64 multiplier would put a relative error of n * 2^-53 into the
    n-th extended candidate term, so the exact rational m is used when the
    family has one, and otherwise Richardson extrapolation of central
    differences of the double-double map (accurate to about 1e-27).
    """
    if L is None:
        try:
            exact = spec.exact_fixed_point()
        except (ArithmeticError, ValueError, NoFixedPoint):
            exact = None
        if exact is not None:
            return as_ext(exact[1])
        L = fixed_point_ext(spec)
    Lf = float(L)
    lo, hi = spec.domain()
    h = 2.0**-7 * max(1.0, abs(Lf))
    room = min(Lf - lo, hi - Lf) / 4
    while h > room:
        h /= 2
    rows: list[list[ExtendedReal]] = []
    for i in range(7):
        step = h / 2**i
        row = [(spec.ext(L + step) - spec.ext(L - step)) / (2 * step)]
        for j in range(1, i + 1):
            row.append(row[j - 1] + (row[j - 1] - rows[i - 1][j - 1]) / (4**j - 1))
        rows.append(row)
    return rows[-1][-1]


def contraction_interval(spec: FunctionSpec) -> tuple[float, float]:
    """Maximal (lo, hi) on which 0 < f' < 1, from the family's closed form."""
    if isinstance(spec, KthRoot):
        L, k = spec.L, spec.k
        return (L - L**k + (1.0 / k) ** (k / (k - 1.0)), math.inf)
    if isinstance(spec, SqrtAffine):
        return (0.25 - spec.C, math.inf)
    if isinstance(spec, ChebyInverse):
        return (_cheb.cheb_contraction_point(spec.K, spec.scaled), math.inf)
    raise Unsupported(
        f"no closed-form contraction interval for {spec.family}; use widest_root_like_interval"
    )


def _second(spec: FunctionSpec, t: float) -> float:
    d2 = spec.deriv2(t)
    if d2 is None:
        h = max(1.0, abs(t)) * 1e-5
        d2 = (spec(t + h) - 2.0 * spec(t) + spec(t - h)) / (h * h)
    return d2


def verify_root_like(spec: FunctionSpec, interval: tuple[float, float], grid_points: int = 64) -> RootLikeReport:
    """Grid check of 0 < f' < 1 and f'' < 0 on ``interval``.

    The fixed point itself is always added to the grid, so a vanishing
    second derivative exactly at L is never stepped over.
    """
    if grid_points < 16:
        raise ValueError("grid_points must be at least 16")
    lo, hi = map(float, interval)
    if not lo < hi:
        raise ValueError("empty interval")
    grid = list(np.linspace(lo, hi, grid_points))
    info = fixed_point(spec)
    inside = lo < info.L < hi
    if inside:
        grid.append(info.L)
    for t in grid:
        if not spec.in_domain(float(t)):
            raise DomainError(f"grid point {t!r} outside the domain of {format_spec(spec)}")
    d1 = np.array([spec.deriv(float(t)) for t in grid])
    d2 = np.array([_second(spec, float(t)) for t in grid])
    contraction = bool(np.all(np.abs(d1) < 1.0))
    pos = bool(np.all(d1 > 0.0))
    neg = bool(np.all(d2 < 0.0))
    return RootLikeReport(
        interval=(lo, hi),
        is_contraction=contraction,
        fprime_positive=pos,
        fsecond_negative=neg,
        fixed_point_inside=inside,
        verdict=contraction and pos and neg and inside,
    )


def widest_root_like_interval(
    spec: FunctionSpec, step: float = 1e-3, max_span: float = 100.0
) -> tuple[float, float]:
    """Largest grid-certified interval around L where f is root-like.

    Walks outward from the fixed point in steps of ``step * max(1, |L|)``
    until a derivative condition fails, the domain ends, or ``max_span``
    is reached.  Returns the last certified endpoints.
    """
    L = fixed_point(spec).L
    h = step * max(1.0, abs(L))

    def ok(t):
        if not spec.in_domain(t):
            return False
        try:
            d1 = spec.deriv(t)
            d2 = _second(spec, t)
        except (DomainError, ZeroDivisionError, OverflowError, ValueError):
            return False
        return 0.0 < d1 < 1.0 and d2 < 0.0

    if not ok(L):
        raise Unsupported(f"{format_spec(spec)} is not root-like at its fixed point")
    ends = []
    for direction in (-1.0, 1.0):
        t = L
        n = 0
        while n * h < max_span:
            nxt = L + direction * (n + 1) * h
            if not ok(nxt):
                break
            t = nxt
            n += 1
        ends.append(t)
    return ends[0], ends[1]
