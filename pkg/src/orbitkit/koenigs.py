"""Complex-plane checks for f(z) = sqrt(L^2 - L + z) on the disk D_L(L).

D_L(L) is the open disk of radius L centred at L.  The principal square
root maps the translated disk back into D_L(L); squaring the disk gives the
region inside the cardioid r = 2L^2 (1 + cos theta).  These are sampling
checks (a falsification harness), not proofs.

Shifting the disk to the unit disk with psi(z) = L + L z conjugates f to
g = psi^-1 o f o psi, whose multiplier at 0 is lambda = 1/(2L).  The
approximants lambda^-n g^n(psi^-1 z) converge to the Koenigs function.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .catalog import KthRoot
from .errors import DomainExit
from .iteration import candidate_sequence, estimate_limit

__all__ = [
    "DiskSample",
    "DiskCheck",
    "disk_samples",
    "disk_self_map_check",
    "cardioid_containment_check",
    "non_surjectivity_witness",
    "koenigs_approximant",
    "koenigs_approximants",
    "currie_c",
]


@dataclass(frozen=True)
class DiskSample:
    L: float
    points: np.ndarray  # complex

    def __post_init__(self):
        if np.any(np.abs(self.points - self.L) >= self.L):
            raise ValueError("sample point outside the open disk D_L(L)")


@dataclass(frozen=True)
class DiskCheck:
    ok: bool
    margin: float  # min of L - |f(z) - L| over the samples
    worst_point: complex
    n_samples: int


def _check_L(L: float) -> float:
    L = float(L)
    if not L > 1.0:
        raise ValueError("L must exceed 1")
    return L


def disk_samples(L: float, n_samples: int) -> DiskSample:
    """Polar grid in D_L(L): Chebyshev-spaced radii, uniform angles, plus the centre."""
    L = _check_L(L)
    if n_samples < 100:
        raise ValueError("n_samples must be at least 100")
    n_r = max(4, int(math.sqrt(n_samples)))
    n_t = max(4, (n_samples - 1) // n_r)
    i = np.arange(n_r)
    # nodes of (0, 1) clustered at both ends, so the rim is well covered
    radii = L * 0.5 * (1.0 - np.cos(np.pi * (i + 0.5) / n_r))
    angles = np.linspace(-np.pi, np.pi, n_t, endpoint=False)
    R, T = np.meshgrid(radii, angles)
    pts = L + (R * np.exp(1j * T)).ravel()
    return DiskSample(L, np.concatenate([[complex(L)], pts]))


def _f(L: float, z: complex) -> complex:
    w = (L * L - L) + z
    if w.imag == 0.0 and w.real <= 0.0:
        raise DomainExit(f"L^2 - L + z = {w!r} lies on the branch cut of the square root")
    return cmath.sqrt(w)


def disk_self_map_check(L: float, n_samples: int = 10_000) -> DiskCheck:
    """Does the principal sqrt(L^2 - L + z) keep every sample inside D_L(L)?"""
    s = disk_samples(L, n_samples)
    L = s.L
    w = (L * L - L) + s.points
    fz = np.sqrt(w)  # numpy's complex sqrt is the principal branch
    margins = L - np.abs(fz - L)
    k = int(np.argmin(margins))
    return DiskCheck(
        ok=bool(np.all(margins > 0.0)),
        margin=float(margins[k]),
        worst_point=complex(s.points[k]),
        n_samples=len(s.points),
    )


def cardioid_containment_check(L: float, n_theta: int = 1000, n_radii: int = 50) -> bool:
    """Disk C = D_{L^2}(L^2) inside the cardioid S(A), and S maps A into the cardioid.

    With A = D_L(L) in polar form r <= 2L cos(theta), squaring sends (r, theta)
    to (r^2, 2 theta), and r^2 <= 4L^2 cos^2(theta) = 2L^2 (1 + cos 2 theta).
    """
    L = _check_L(L)
    th = np.linspace(-np.pi / 2, np.pi / 2, n_theta)
    circle = 2 * L * L * np.cos(th)
    cardioid = 2 * L * L * (1 + np.cos(th))
    if not np.all(circle <= cardioid):
        return False
    # interior polar samples of A pushed through the square map
    frac = (np.arange(1, n_radii + 1) - 0.5) / n_radii
    r = np.outer(2 * L * np.cos(th), frac)
    z = r * np.exp(1j * th)[:, None]
    sq = z * z
    rho, phi = np.abs(sq), np.angle(sq)
    bound = 2 * L * L * (1 + np.cos(phi))
    # near theta = +-pi/2 both sides vanish and only rounding separates them
    if not np.all(rho <= bound * (1 + 1e-12) + 1e-12 * L * L):
        return False
    # the translated disk B = D_L(L^2) sits inside C
    b = L * L + L * frac[:, None] * np.exp(1j * np.linspace(-np.pi, np.pi, n_theta))[None, :]
    return bool(np.all(np.abs(b - L * L) < L * L))


def non_surjectivity_witness(L: float) -> tuple[float, bool, bool]:
    """z = L + 2/3 lies in A = D_L(L) while z^2 falls outside B = D_L(L^2)."""
    L = _check_L(L)
    z = L + 2.0 / 3.0
    in_A = abs(z - L) < L
    outside_B = abs(z * z - L * L) >= L
    return z, in_A, outside_B


def koenigs_approximants(L: float, z: complex, n: int) -> list[complex]:
    """phi_k = lambda^-k g^k(psi^-1 z) = (f^k(z) - L) / (L lambda^k) for k = 0..n."""
    L = _check_L(L)
    z = complex(z)
    if abs(z - L) >= L:
        raise DomainExit(f"z={z!r} is outside D_L(L)")
    out = [(z - L) / L]
    scale = 1.0
    for _ in range(n):
        z = _f(L, z)
        scale *= 2.0 * L
        out.append((z - L) / L * scale)
    return out


def koenigs_approximant(L: float, z: complex, n: int) -> complex:
    return koenigs_approximants(L, z, n)[-1]


def currie_c(L: float) -> float:
    """sqrt(4 L^2 lim (2L)^n (L - f^n(f(0)))) with f(t) = sqrt(L^2 - L + t)."""
    L = _check_L(L)
    spec = KthRoot(L, 2)
    t0 = spec.ext(0.0)
    cs = candidate_sequence(spec, spec.ext_fixed_point(), 1.0 / (2.0 * L), t0, 400, "extended")
    est = estimate_limit(cs, 1e-8)
    return math.sqrt(4.0 * L * L * est.value)
