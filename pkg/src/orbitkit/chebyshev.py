"""Multiple-angle polynomials p_K with cos(K*theta) = p_K(cos theta).

Also their increasing-branch inverses f_K and the nested-radical analogues
whose candidate sequences converge to pi**2/8 (unscaled) or K*pi**2/8
(scaled, fixed point at K).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import OutOfDomain

__all__ = [
    "ChebPoly",
    "cheb_poly",
    "f_k",
    "f_k_derivative",
    "f_k_second_derivative",
    "cheb_candidate_limit",
    "cheb_nested_table",
    "cheb_contraction_point",
]


@dataclass(frozen=True)
class ChebPoly:
    """p_K with exact integer coefficients, lowest degree first."""

    K: int
    coeffs: tuple[int, ...]

    def __call__(self, t):
        return np.polynomial.polynomial.polyval(t, self.coeffs)

    def deriv(self, order: int = 1) -> tuple[int, ...]:
        c = list(self.coeffs)
        for _ in range(order):
            c = [i * c[i] for i in range(1, len(c))] or [0]
        return tuple(c)

    def eval_deriv(self, t, order: int = 1):
        return np.polynomial.polynomial.polyval(t, self.deriv(order))

    def __str__(self):
        terms = []
        for power in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[power]
            if c == 0:
                continue
            mag = abs(c)
            body = ("" if mag == 1 and power else str(mag)) + (
                "t" if power == 1 else f"t^{power}" if power else ""
            )
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


@lru_cache(maxsize=None)
def cheb_poly(K: int) -> ChebPoly:
    """p_K via p_{j+1} = 2t p_j - p_{j-1}, p_0 = 1, p_1 = t."""
    if not (0 <= K <= 64):
        raise ValueError(f"K must lie in [0, 64], got {K}")
    prev, cur = [1], [0, 1]
    if K == 0:
        return ChebPoly(0, (1,))
    for _ in range(K - 1):
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return ChebPoly(K, tuple(cur))


def f_k(K: int, t: float, scaled: bool = False) -> float:
    """Increasing-branch inverse of p_K (or K * p_K^{-1}(t/K) when scaled)."""
    if scaled:
        return K * f_k(K, t / K)
    if t < -1.0:
        raise OutOfDomain(f"f_{K} is defined on [-1, inf); got t={t!r}")
    if t <= 1.0:
        return math.cos(math.acos(t) / K)
    return math.cosh(math.acosh(t) / K)


def f_k_derivative(K: int, t: float, scaled: bool = False) -> float:
    # inverse-function rule keeps the t -> 1 limit (1/K^2) well conditioned
    if scaled:
        return f_k_derivative(K, t / K)
    if t <= -1.0:
        raise OutOfDomain(f"f_{K}' is unbounded at the branch endpoint t=-1 (got {t!r})")
    x = f_k(K, t)
    return 1.0 / cheb_poly(K).eval_deriv(x, 1)


def f_k_second_derivative(K: int, t: float, scaled: bool = False) -> float:
    if scaled:
        return f_k_second_derivative(K, t / K) / K
    d1 = f_k_derivative(K, t)
    x = f_k(K, t)
    return -cheb_poly(K).eval_deriv(x, 2) * d1**3


def cheb_contraction_point(K: int, scaled: bool = False) -> float:
    """The unique z < 1 with f_K'(z) = 1, by bisection."""
    lo, hi = -1.0, 1.0
    # f_K' decreases from +inf at -1 to 1/K^2 at 1
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= -1.0:
            break
        if f_k_derivative(K, mid) > 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 4 * math.ulp(max(abs(lo), abs(hi), 1.0)):
            break
    z = 0.5 * (lo + hi)
    return K * z if scaled else z


def cheb_candidate_limit(K: int, t0: float) -> float:
    """Exact limit arccos(t0)**2 / 2 of K^(2n) |1 - f_K^(n)(t0)|."""
    if not (-1.0 <= t0 < 1.0):
        raise OutOfDomain(f"t0 must lie in [-1, 1); got {t0!r}")
    return math.acos(t0) ** 2 / 2.0


def cheb_nested_table(K: int, t0: float, n: int, scaled: bool = False):
    """Rows (j, c_j) of c_j = K^(2j) |L - f^(j)(t0)| in extended precision.

    L is 1 (unscaled) or K (scaled).  The table stops early once the
    distance to L reaches the cancellation floor.
    """
    from .catalog import ChebyInverse
    from .iteration import candidate_sequence
    from .numeric import ExtendedReal

    spec = ChebyInverse(K=K, scaled=scaled)
    L = ExtendedReal(float(K) if scaled else 1.0)
    m = ExtendedReal(1.0) / (K * K)
    cs = candidate_sequence(spec, L, m, t0, n, precision="extended")
    return [(j, c) for j, c in enumerate(cs.c)]
