"""Reproduction table: every headline constant recomputed and checked.

``run_all()`` returns one :class:`CheckResult` per row; the CLI ``repro``
verb prints them and exits 0 only when all rows pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import catalog as cat
from .chebyshev import cheb_nested_table
from .eigen import (
    build_phi_series,
    exp_two_cos_pair,
    limit_second_order,
    phi_root_for_limit,
    phi_series_error,
    sqrt2_phi_closed,
)
from .iteration import (
    candidate_sequence,
    candidate_sequence_for,
    check_monotone_candidate,
    check_monotone_orbit,
    compare_candidates,
    estimate_limit,
    orbit,
)
from .koenigs import cardioid_containment_check, currie_c, disk_self_map_check
from .mobius import (
    MobiusCoeffs,
    QParams,
    associated_q,
    candidate_limit_exact,
    compose,
    eigen,
    fibonacci_residual,
    iterate_brute,
    iterate_closed,
    lms_from_abd,
    q_from_lms,
)
from .errors import OrbitkitError
from .numeric import ExtendedReal

__all__ = ["CheckResult", "CHECKS", "run_all"]


@dataclass(frozen=True)
class CheckResult:
    key: str
    title: str
    passed: bool
    detail: str


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def _limit(spec, t0, precision="extended", rel_tol=1e-8):
    return estimate_limit(candidate_sequence_for(spec, t0, 400, precision), rel_tol)


def check_mysterious_pattern():
    est = _limit(cat.SqrtAffine(2), 0.0)
    target = math.pi**2 / 4
    # (2^n sqrt(2 - f^(n-1)(0)))^2 at n = 20, extended precision
    o = orbit(cat.SqrtAffine(2), 0.0, 19)
    a20 = ExtendedReal(2.0**20) ** 2 * (2 - o.values[19])
    r1, r2 = _rel(est.value, target), _rel(float(a20), math.pi**2)
    return r1 < 1e-8 and r2 < 1e-6, f"limit={est.value!r} rel={r1:.1e}; a_20^2 rel={r2:.1e}"


def check_mobius_worked():
    mc = MobiusCoeffs(3, 6, 4)
    worst_exact = worst_num = 0.0
    for t0 in (0, 1, 3, 5):
        exact = candidate_limit_exact(mc, t0)
        formula = abs(Fraction(5 * t0 - 10, t0 + 3))
        worst_exact = max(worst_exact, abs(float(exact - formula)))
        est = _limit(mc.spec(), float(t0))
        worst_num = max(worst_num, _rel(est.value, float(formula)))
    return worst_exact < 1e-12 and worst_num < 1e-6, f"exact err={worst_exact:.1e}, numeric rel={worst_num:.1e}"


def check_continued_fraction():
    mc = MobiusCoeffs(2, 15, 0)
    exact = candidate_limit_exact(mc, 2)
    est = _limit(cat.ContinuedFraction(2, 15), 2.0)
    r = _rel(est.value, 4.8)
    return exact == Fraction(24, 5) and r < 1e-6, f"exact={exact}, numeric={est.value!r} rel={r:.1e}"


def check_fibonacci():
    v = float(fibonacci_residual(25))
    err = abs(v - math.sqrt(5))
    return err < 1e-6, f"n=25 value={v!r} err={err:.1e}"


def check_series_exact():
    rs = build_phi_series(6, 6)
    want_d = [3, 1, Fraction(1, 15), Fraction(1, 525), Fraction(11, 338625)]
    want_p = [3, 1, Fraction(1, 30), Fraction(1, 3150), Fraction(11, 8127000), Fraction(97, 31573395000)]
    ok6 = list(rs.derivs[:5]) == want_d and rs.coeffs(5) == want_p
    rs2 = build_phi_series(2, 12)
    ok2 = all(rs2.coeffs()[k] == Fraction(1, k * math.factorial(2 * k - 1)) for k in range(1, 13))
    return ok6 and ok2, f"C=6 derivatives/p5 {'ok' if ok6 else 'MISMATCH'}; C=2 closed form {'ok' if ok2 else 'MISMATCH'}"


def check_series_errors():
    rs = build_phi_series(6, 5)
    bounds = {3: 4.5e-6, 4: 2.1e-8, 5: 5.1e-11}
    avgs = {3: 7e-7, 4: 3e-9, 5: 6e-12}
    ok = True
    parts = []
    for n in (3, 4, 5):
        rep = phi_series_error(rs, n)
        good = rep.max_error < bounds[n] and avgs[n] / 3 <= rep.avg_error <= 3 * avgs[n]
        ok &= good
        parts.append(f"E{n} max={rep.max_error:.2e} avg={rep.avg_error:.2e}")
    return ok, "; ".join(parts)


def check_series_root():
    th = phi_root_for_limit(build_phi_series(6, 5), 0.0)
    est = _limit(cat.SqrtAffine(6), 0.0)
    ok = abs(th + 3.3656575319) < 1e-9 and abs(abs(th) - est.value) < 5e-8
    return ok, f"theta={th:.10f}, numeric limit={est.value:.10f}"


def check_chebyshev():
    target = math.pi**2 / 8
    worst = 0.0
    for K in (2, 3, 4, 5):
        c = estimate_limit(candidate_sequence_for(cat.ChebyInverse(K), 0.0), 1e-8).value
        worst = max(worst, _rel(c, target))
        cs = estimate_limit(candidate_sequence_for(cat.ChebyInverse(K, True), 0.0), 1e-8).value
        worst = max(worst, _rel(cs, K * target))
    rows = cheb_nested_table(5, 0.0, 8)
    r5 = _rel(float(rows[8][1]), target)
    c2 = estimate_limit(candidate_sequence_for(cat.ChebyInverse(2), 0.0), 1e-8).value
    r2 = _rel(8 * c2, math.pi**2)
    ok = worst < 1e-6 and r5 < 1e-6 and r2 < 1e-6
    return ok, f"worst rel={worst:.1e}; K=5 c_8 rel={r5:.1e}; 8c(K=2) rel={r2:.1e}"


def check_exp_conjugate():
    est = _limit(cat.ExpConjugate(), 1.0)
    target = math.exp(2) * math.pi**2 / 4
    closed = limit_second_order(exp_two_cos_pair(), 1.0)
    r = _rel(est.value, target)
    return r < 1e-6 and _rel(closed, target) < 1e-12, f"numeric={est.value!r} rel={r:.1e}"


def check_sqrt2_family():
    worst = 0.0
    for t0 in (-1.0, 0.0, 1.0, 3.0, 5.0):
        worst = max(worst, _rel(_limit(cat.SqrtAffine(2), t0).value, sqrt2_phi_closed(t0)))
    return worst < 1e-6, f"worst rel={worst:.1e}"


def check_properties():
    import random

    rng = random.Random(20240611)
    # (spec, left end of an interval below L on which it is root-like)
    specs = [
        (cat.SqrtAffine(2), cat.contraction_interval(cat.SqrtAffine(2))[0]),
        (cat.KthRoot(3, 3), cat.contraction_interval(cat.KthRoot(3, 3))[0]),
        (cat.ChebyInverse(3), cat.contraction_interval(cat.ChebyInverse(3))[0]),
        (cat.LogShift(1), 2 - math.e),
        (cat.PowerMap(0.5), 0.25),
        (cat.NonSmoothDemo(), -0.28),
    ]
    for spec, lo in specs:
        L = cat.fixed_point(spec).L
        for _ in range(20):
            for t0 in (rng.uniform(lo, L), rng.uniform(L, L + 1.2)):
                if t0 == L:
                    continue
                cs = candidate_sequence_for(spec, t0, 30)
                if not (check_monotone_orbit(cs.orbit, cs.L) and check_monotone_candidate(cs)):
                    return False, f"monotonicity fails for {spec} at t0={t0!r}"
    # small gaps keep the pole of Q away from the starts
    for spec, gap, side in ((cat.SqrtAffine(2), 0.1, (0.0, 3.0)), (cat.KthRoot(3, 3), 0.001, (1.0, 5.0))):
        info = cat.fixed_point(spec)
        q = associated_q(spec, gap).spec()
        for t0 in side:
            if not compare_candidates(spec, q, cat.fixed_point_ext(spec), info.m, t0, t0, 20):
                return False, f"comparison fails for {spec} at t0={t0}"
    done = 0
    while done < 100:
        try:
            f, g = (MobiusCoeffs(*(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3))) for _ in range(2))
            t = Fraction(rng.randint(-20, 20), 7)
            lhs, rhs = compose(f, g)(t), f(g(t))
        except (ValueError, ArithmeticError, OrbitkitError):
            continue  # constant map, affine composite or a pole
        if lhs != rhs:
            return False, "composition homomorphism fails"
        done += 1
    done = 0
    while done < 100:
        mc = MobiusCoeffs(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3))
        if mc.discriminant <= 0.1:
            continue
        t = rng.uniform(-3, 3)
        n = rng.randint(1, 12)
        try:
            a, b = iterate_closed(mc, n, t), iterate_brute(mc, n, t)
        except (ValueError, ArithmeticError, OrbitkitError):
            continue
        if abs(a) > 1e6 or abs(b) > 1e6:
            continue
        if abs(a - b) > 1e-8 * max(1.0, abs(b)):
            return False, f"closed iterate mismatch for {mc}, n={n}"
        done += 1
    for _ in range(1000):
        p = QParams(
            Fraction(rng.randint(1, 50), rng.randint(1, 9)),
            Fraction(rng.randint(1, 98), 99),
            -Fraction(rng.randint(1, 99), rng.randint(1, 20)),
        )
        mc = q_from_lms(p)
        if mc.discriminant <= 0 or lms_from_abd(mc, p.L) != p:
            return False, f"round trip / discriminant fails for {p}"
    return True, "monotonicity, comparison, homomorphism, closed iterates, round trips"


def check_koenigs():
    bad = []
    for L in (1.25, 2.0, 3.0, 10.0):
        d = disk_self_map_check(L, 10_000)
        if not (d.ok and cardioid_containment_check(L)):
            bad.append(L)
    c2 = currie_c(2.0)
    r = _rel(c2, math.pi)
    return not bad and r < 1e-6, f"geometry failures={bad}; C(2)={c2!r} rel={r:.1e}"


def check_unknown_limit():
    spec = cat.KthRoot(3, 3)
    ext = _limit(spec, 0.0, "extended").value
    dbl = _limit(spec, 0.0, "double", rel_tol=1e-6).value
    r = _rel(dbl, ext)
    return r < 1e-5, f"extended={ext!r} double={dbl!r} rel={r:.1e}"


CHECKS: list[tuple[str, str, Callable[[], tuple[bool, str]]]] = [
    ("1", "nested sqrt(2) limit pi^2/4", check_mysterious_pattern),
    ("2", "Mobius (3,6,4) limits", check_mobius_worked),
    ("3", "continued fraction limit 24/5", check_continued_fraction),
    ("4", "Fibonacci residual sqrt(5)", check_fibonacci),
    ("5", "exact eigen-series coefficients", check_series_exact),
    ("6", "series truncation errors", check_series_errors),
    ("7", "series root vs numeric limit", check_series_root),
    ("8", "Chebyshev limits pi^2/8, K pi^2/8", check_chebyshev),
    ("9", "exp conjugate limit e^2 pi^2/4", check_exp_conjugate),
    ("10", "closed-form sqrt(2) limit family", check_sqrt2_family),
    ("11", "property suites", check_properties),
    ("12", "disk/cardioid geometry and C(2) = pi", check_koenigs),
    ("13", "unknown limit reproducible across precisions", check_unknown_limit),
]


def run_all(keys=None) -> list[CheckResult]:
    out = []
    for key, title, fn in CHECKS:
        if keys and key not in keys:
            continue
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed row, not an aborted table
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(key, title, bool(ok), detail))
    return out
