"""orbitkit: candidate sequences c_n = |L - f^n(t0)| / m^n and their limits.

Modules:

- ``numeric``    double-double reals and helpers
- ``catalog``    contraction families with analytic derivatives
- ``iteration``  orbits, candidate sequences, Aitken limit estimation
- ``mobius``     exact Möbius algebra and closed-form limits
- ``eigen``      eigen-function limits and the exact series of phi
- ``chebyshev``  multiple-angle polynomials and their inverse branches
- ``koenigs``    complex disk checks and the C(L) evaluator
- ``cli``        the ``orbitkit`` command
"""

from .catalog import (
    ChebyInverse,
    ContinuedFraction,
    ExpConjugate,
    FunctionSpec,
    KthRoot,
    LogShift,
    Mobius,
    NonSmoothDemo,
    PowerMap,
    QuarticDemo,
    RationalDemo,
    ScaledCubeRoot,
    SqrtAffine,
    fixed_point,
    fixed_point_ext,
    format_spec,
    parse_spec,
)
from .errors import OrbitkitError
from .iteration import (
    candidate_sequence,
    candidate_sequence_for,
    estimate_limit,
    orbit,
)
from .numeric import ExtendedReal

__version__ = "0.1.0"

__all__ = [
    "ChebyInverse",
    "ContinuedFraction",
    "ExpConjugate",
    "ExtendedReal",
    "FunctionSpec",
    "KthRoot",
    "LogShift",
    "Mobius",
    "NonSmoothDemo",
    "OrbitkitError",
    "PowerMap",
    "QuarticDemo",
    "RationalDemo",
    "ScaledCubeRoot",
    "SqrtAffine",
    "candidate_sequence",
    "candidate_sequence_for",
    "estimate_limit",
    "fixed_point",
    "fixed_point_ext",
    "format_spec",
    "orbit",
    "parse_spec",
]
