"""Orbits, candidate sequences and limit estimation.

The candidate sequence of a start t0 is

    c_n = |L - f^n(t0)| / |m|^n

with m = f'(L).  It is always built with the ratio recursion
``c[n+1] = c[n] |L - t[n+1]| / (|m| |L - t[n]|)`` so that |m|^n is never
formed, and it stops as soon as |L - t_n| falls under 10^3 ulp(L) in the
active precision (past that point the distance is mostly rounding noise).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .catalog import FunctionSpec, fixed_point, fixed_point_ext, format_spec, multiplier_ext
from .errors import Degenerate, DomainError, HypothesisViolated, NotConverged, ZeroMultiplier
from .numeric import EXT_EPS, ExtendedReal, as_ext, ulp

__all__ = [
    "Orbit",
    "CandidateSequence",
    "LimitEstimate",
    "PRECISIONS",
    "orbit",
    "candidate_sequence",
    "candidate_sequence_for",
    "estimate_limit",
    "check_monotone_orbit",
    "check_monotone_candidate",
    "compare_candidates",
]

PRECISIONS = ("double", "extended")
MAX_ORBIT = 10**6
# stop once |L - t_n| < STOP_ULPS * ulp(L)
STOP_ULPS = 1e3

_UNIT_ROUNDOFF = {"double": 2.0**-53, "extended": EXT_EPS}


@dataclass(frozen=True)
class Orbit:
    spec: FunctionSpec
    t0: ExtendedReal
    values: tuple[ExtendedReal, ...]
    precision: str = "extended"

    def __len__(self):
        return len(self.values)

    def floats(self) -> list[float]:
        return [float(v) for v in self.values]


@dataclass(frozen=True)
class CandidateSequence:
    orbit: Orbit
    L: ExtendedReal
    m: ExtendedReal
    c: tuple[ExtendedReal, ...]
    truncated: bool = False  # hit the cancellation floor before n terms

    @property
    def precision(self) -> str:
        return self.orbit.precision

    def floats(self) -> list[float]:
        return [float(v) for v in self.c]


@dataclass(frozen=True)
class LimitEstimate:
    value: float
    abs_error_bound: float
    method: str  # closed_form | aitken | direct_tail
    n_used: int
    value_ext: Optional[ExtendedReal] = None

    def __post_init__(self):
        if self.method not in ("closed_form", "aitken", "direct_tail"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.abs_error_bound < 0:
            raise ValueError("abs_error_bound must be nonnegative")
        if self.method == "closed_form" and self.abs_error_bound != 0:
            raise ValueError("closed-form estimates carry a zero error bound")


def _check_precision(precision: str) -> None:
    if precision not in PRECISIONS:
        raise ValueError(f"precision must be one of {PRECISIONS}, got {precision!r}")


def _step(spec: FunctionSpec, t: ExtendedReal, precision: str, index: int) -> ExtendedReal:
    try:
        if precision == "extended":
            return spec.ext(t)
        return ExtendedReal(spec(float(t)))
    except DomainError as exc:
        # t_{index-1} is the iterate that left the domain
        raise type(exc)(f"iterate {index - 1}: {exc}", index=index - 1) from exc


def _start(spec: FunctionSpec, t0, precision: str) -> ExtendedReal:
    t = as_ext(t0)
    if t is NotImplemented:
        raise TypeError(f"cannot use {t0!r} as a start value")
    if precision == "double":
        t = ExtendedReal(float(t))
    if not spec.in_domain(float(t)):
        raise DomainError(f"start {float(t)!r} outside the domain of {format_spec(spec)}", index=0)
    return t


def orbit(spec: FunctionSpec, t0, n: int, precision: str = "extended") -> Orbit:
    """t_0, ..., t_n with t_{k+1} = f(t_k)."""
    _check_precision(precision)
    if not (0 <= n <= MAX_ORBIT):
        raise ValueError(f"n must lie in [0, {MAX_ORBIT}]")
    t = _start(spec, t0, precision)
    vals = [t]
    for k in range(1, n + 1):
        t = _step(spec, t, precision, k)
        vals.append(t)
    return Orbit(spec, vals[0], tuple(vals), precision)


def _floor(L: ExtendedReal, precision: str) -> float:
    return STOP_ULPS * ulp(L, precision)


def _coerce(x, name: str) -> ExtendedReal:
    e = as_ext(x)
    if e is NotImplemented:
        raise TypeError(f"cannot use {x!r} as {name}")
    return e


def candidate_sequence(
    spec: FunctionSpec, L, m, t0, n: int, precision: str = "extended"
) -> CandidateSequence:
    """c_0..c_n (fewer if the cancellation floor is reached first).

    ``m`` may be negative (e.g. a continued fraction); |m| is used.
    """
    _check_precision(precision)
    L = _coerce(L, "L")
    m = abs(_coerce(m, "m"))
    if m.is_zero() or m >= 1:
        raise ZeroMultiplier(f"need 0 < |m| < 1, got {float(m)!r}")
    if precision == "double":
        L = ExtendedReal(float(L))
        m = ExtendedReal(float(m))
    t = _start(spec, t0, precision)
    d = abs(L - t)
    if d.is_zero():
        vals = tuple([t] * (n + 1))
        zeros = tuple([ExtendedReal(0.0)] * (n + 1))
        return CandidateSequence(Orbit(spec, t, vals, precision), L, m, zeros)
    floor = _floor(L, precision)
    vals = [t]
    cs = [d]
    truncated = False
    c = d
    for k in range(1, n + 1):
        t_next = _step(spec, t, precision, k)
        d_next = abs(L - t_next)
        if float(d_next) < floor:
            truncated = True
            break
        if precision == "extended":
            c = c * d_next / (m * d)
        else:
            c = ExtendedReal(float(c) * float(d_next) / (float(m) * float(d)))
        vals.append(t_next)
        cs.append(c)
        t, d = t_next, d_next
    return CandidateSequence(Orbit(spec, vals[0], tuple(vals), precision), L, m, tuple(cs), truncated)


def candidate_sequence_for(
    spec: FunctionSpec, t0, n: int = 400, precision: str = "extended"
) -> CandidateSequence:
    """Candidate sequence using the family's own fixed point and multiplier."""
    if precision == "extended":
        L = fixed_point_ext(spec)
        return candidate_sequence(spec, L, multiplier_ext(spec, L), t0, n, precision)
    info = fixed_point(spec)
    return candidate_sequence(spec, info.L, info.m, t0, n, precision)


def _to_prec(x: ExtendedReal, precision: str):
    return x if precision == "extended" else float(x)


def estimate_limit(c: CandidateSequence, rel_tol: float = 1e-8) -> LimitEstimate:
    """Aitken-accelerated limit of a candidate sequence.

    Every index k >= 2 yields an accelerated value A_k.  Its error is taken
    as the larger of |A_k - A_{k-1}| and the rounding noise carried by c_k
    (unit roundoff times |L| / |L - t_k|, relative).  The index with the
    smallest such error wins; when the second difference is below 10 ulp
    the raw term c_k stands in for A_k.
    """
    terms = c.c
    if all(v.is_zero() for v in terms):
        raise Degenerate("candidate sequence is identically zero (start at the fixed point)")
    if len(terms) < 6:
        raise NotConverged(f"need at least 6 usable terms, have {len(terms)}")
    prec = c.precision
    eps = _UNIT_ROUNDOFF[prec]
    Lf = abs(float(c.L))
    xs = [_to_prec(v, prec) for v in terms]
    dist = [float(abs(c.L - v)) for v in c.orbit.values]

    accel = []  # (index, value, method)
    for k in range(2, len(xs)):
        x0, x1, x2 = xs[k - 2], xs[k - 1], xs[k]
        d1 = x2 - x1
        d2 = x2 - 2 * x1 + x0
        tiny = 10 * ulp(x2, prec)
        if abs(float(d2)) < tiny:
            accel.append((k, x2, "direct_tail"))
        else:
            accel.append((k, x2 - d1 * d1 / d2, "aitken"))

    best = None
    for j in range(1, len(accel)):
        k, val, method = accel[j]
        diff = abs(float(val - accel[j - 1][1]))
        noise = eps * Lf / dist[k] * abs(float(xs[k])) if dist[k] > 0 else math.inf
        err = max(diff, noise)
        if best is None or err < best[0]:
            best = (err, k, val, method)
    err, k, val, method = best
    value = float(val)
    if not math.isfinite(err) or err > rel_tol * abs(value):
        raise NotConverged(
            f"best accelerated value {value!r} has error {err:.3g} > rel_tol {rel_tol:g}"
        )
    return LimitEstimate(
        value=value,
        abs_error_bound=err,
        method=method,
        n_used=k,
        value_ext=val if isinstance(val, ExtendedReal) else ExtendedReal(val),
    )


def _below_floor(v: ExtendedReal, L: ExtendedReal, precision: str) -> bool:
    return float(abs(L - v)) < _floor(L, precision)


def check_monotone_orbit(o: Orbit, L) -> bool:
    """Orbit moves strictly toward L from its side and never crosses it.

    Steps taken after the orbit has reached the cancellation floor around L
    are only required to stay on the correct side.
    """
    L = _coerce(L, "L")
    vals = o.values
    t0 = vals[0]
    if t0 == L:
        return all(v == L for v in vals)
    above = t0 > L
    for a, b in zip(vals, vals[1:]):
        if above and b < L or not above and b > L:
            return False
        if _below_floor(a, L, o.precision) or _below_floor(b, L, o.precision):
            continue
        if above and not b < a:
            return False
        if not above and not b > a:
            return False
    return True


def check_monotone_candidate(c: CandidateSequence) -> bool:
    """c_n non-increasing above L, non-decreasing below L.

    The slack is 4 ulp plus the rounding that cancellation in |L - t_n|
    amplifies (unit roundoff times |L| / |L - t_n|, relative to c_n); without
    the second term the final few terms before the stop rule read as noise.
    """
    t0 = c.orbit.values[0]
    if t0 == c.L:
        return True
    above = t0 > c.L
    prec = c.precision
    eps = _UNIT_ROUNDOFF[prec]
    Lf = abs(float(c.L))
    vals = c.orbit.values
    for k in range(len(c.c) - 1):
        a, b = c.c[k], c.c[k + 1]
        size = max(abs(float(a)), abs(float(b)))
        dist = float(abs(c.L - vals[k + 1]))
        slack = 4 * ulp(size, prec) + 4 * eps * Lf / dist * size
        delta = float(b - a)
        if above and delta > slack:
            return False
        if not above and delta < -slack:
            return False
    return True


def compare_candidates(
    f: FunctionSpec,
    g: FunctionSpec,
    L,
    m,
    t0,
    u0,
    n: int,
    precision: str = "extended",
) -> bool:
    """Termwise ordering of the candidate sequences of f (from t0) and g (from u0).

    Requires g < f at every visited orbit point on the relevant side of L;
    then checks c_f[k] < c_g[k] when u0 <= t0 < L, or c_f[k] > c_g[k] when
    t0 >= u0 > L, for 1 <= k <= n.
    """
    Le = _coerce(L, "L")
    t0e, u0e = _coerce(t0, "t0"), _coerce(u0, "u0")
    if u0e <= t0e < Le:
        below = True
    elif t0e >= u0e > Le:
        below = False
    else:
        raise ValueError("need u0 <= t0 < L or t0 >= u0 > L")
    cf = candidate_sequence(f, Le, m, t0e, n, precision)
    cg = candidate_sequence(g, Le, m, u0e, n, precision)
    points = list(cf.orbit.values[:-1]) + list(cg.orbit.values[:-1])
    for x in points:
        if (x < Le) != below or x == Le:
            continue
        if precision == "extended":
            gx, fx = g.ext(x), f.ext(x)
        else:
            gx, fx = g(float(x)), f(float(x))
        if not gx < fx:
            raise HypothesisViolated(
                f"ordering g < f fails at t={float(x)!r}: g={float(gx)!r}, f={float(fx)!r}"
            )
    K = min(n, len(cf.c) - 1, len(cg.c) - 1)
    for k in range(1, K + 1):
        a, b = cf.c[k], cg.c[k]
        if below and not a < b:
            return False
        if not below and not a > b:
            return False
    return True
