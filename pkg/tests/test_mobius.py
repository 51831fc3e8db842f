import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from orbitkit import catalog as cat
from orbitkit.errors import (
    DegenerateEigen,
    OrbitkitError,
    PoleAtFixedPoint,
    PoleHit,
    PoleStart,
    RepellingStart,
    Unsupported,
)
from orbitkit.iteration import candidate_sequence_for, estimate_limit
from orbitkit.mobius import (
    MobiusCoeffs,
    QParams,
    associated_q,
    candidate_limit_alternate,
    candidate_limit_exact,
    compose,
    eigen,
    fibonacci,
    fibonacci_residual,
    fixed_points,
    iterate_brute,
    iterate_closed,
    lms_from_abd,
    q_from_lms,
)

PHI = (1 + math.sqrt(5)) / 2

small = st.fractions(min_value=-9, max_value=9, max_denominator=6)


def test_exact_coefficients_stay_rational():
    mc = MobiusCoeffs(3, 6, 4)
    assert mc.exact and mc(0) == F(3, 2)
    assert not MobiusCoeffs(3.0, 6, 4).exact
    with pytest.raises(ValueError):
        MobiusCoeffs(2, 8, 4)
    with pytest.raises(PoleHit):
        mc(-4)


def test_fixed_points_examples():
    assert fixed_points(MobiusCoeffs(3, 6, 4)) == (-3, 2)
    assert fixed_points(MobiusCoeffs(2, 15, 0)) == (-3, 5)
    lo, hi = fixed_points(MobiusCoeffs(1, 1, 0))
    assert float(lo) == pytest.approx((1 - math.sqrt(5)) / 2, rel=1e-15)
    assert float(hi) == pytest.approx(PHI, rel=1e-15)
    assert fixed_points(MobiusCoeffs(0, -1, 0)) == ()
    assert fixed_points(MobiusCoeffs(2, -1, 0)) == (1,)


def test_eigen_examples():
    e = eigen(MobiusCoeffs(3, 6, 4))
    assert (e.lam, e.mu, e.m, e.L, e.L1) == (6, 1, F(1, 6), 2, -3)
    e = eigen(MobiusCoeffs(2, 15, 0))
    assert (e.lam, e.mu, e.m, e.L) == (5, -3, F(-3, 5), 5)
    e = eigen(MobiusCoeffs(1, 1, 0))
    assert float(e.m) == pytest.approx(-1 / PHI**2, rel=1e-15)
    assert abs(1 / float(e.m)) == pytest.approx(PHI**2, rel=1e-15)


def test_eigen_rejects_degenerate():
    with pytest.raises(DegenerateEigen):
        eigen(MobiusCoeffs(2, -1, 0))  # parabolic
    with pytest.raises(DegenerateEigen):
        eigen(MobiusCoeffs(0, -1, 0))  # elliptic
    with pytest.raises(DegenerateEigen):
        eigen(MobiusCoeffs(0, 1, 0))  # t -> 1/t, eigenvalues +-1


@given(small, small, small)
def test_multipliers_are_reciprocal(a, b, d):
    assume(b != a * d and (a - d) ** 2 + 4 * b > 0)
    mc = MobiusCoeffs(a, b, d)
    try:
        e = eigen(mc)
    except DegenerateEigen:
        return
    assert abs(float(e.m * e.m1) - 1) < 1e-12
    if e.L + mc.d != 0 and e.L1 + mc.d != 0:
        m_other = lms_from_abd(mc, e.L1).m
        assert abs(float(lms_from_abd(mc, e.L).m * m_other) - 1) < 1e-12


def test_q_from_lms_example():
    assert q_from_lms(QParams(2, F(1, 6), F(-1, 18))) == MobiusCoeffs(3, 6, 4)
    q = lms_from_abd(MobiusCoeffs(3, 6, 4), 2)
    assert (q.m, q.s) == (F(1, 6), F(-1, 18))
    assert lms_from_abd(MobiusCoeffs(3, 6, 4), -3).m == 6


def test_lms_second_derivative_against_finite_differences():
    spec = cat.Mobius(3.0, 6.0, 4.0)
    h = 1e-4
    fd = (spec(2 + h) - 2 * spec(2) + spec(2 - h)) / h**2
    assert fd == pytest.approx(-1 / 18, rel=1e-6)


def test_lms_pole_at_fixed_point():
    with pytest.raises(PoleAtFixedPoint):
        lms_from_abd(MobiusCoeffs(1, 1, 0), 0)


def test_qparams_validation():
    for bad in ((1, 0, -1), (1, 1, -1), (1, F(1, 2), 0)):
        with pytest.raises(ValueError):
            QParams(*bad)


@given(
    st.fractions(min_value=F(1, 10), max_value=50, max_denominator=20),
    st.fractions(min_value=F(1, 100), max_value=F(99, 100), max_denominator=100),
    st.fractions(min_value=-50, max_value=F(-1, 30), max_denominator=30),
)
def test_round_trip_and_discriminant(L, m, s):
    p = QParams(L, m, s)
    mc = q_from_lms(p)
    assert mc.discriminant > 0
    assert lms_from_abd(mc, L) == p
    assert q_from_lms(lms_from_abd(mc, L)) == mc


def test_associated_q_examples():
    q = associated_q(cat.SqrtAffine(2), 1)
    p = lms_from_abd(q, 2)
    assert (p.L, p.m, p.s) == (2, F(1, 4), F(-1, 32) - 1)
    q3 = associated_q(cat.KthRoot(3, 3), 0.1)
    assert q3.discriminant > 0
    assert float(lms_from_abd(q3, 3).m) == pytest.approx(1 / 27, rel=1e-15)
    with pytest.raises(ValueError):
        associated_q(cat.SqrtAffine(2), 0)


def test_associated_q_lies_below_f_near_L():
    f = cat.SqrtAffine(2)
    q = associated_q(f, 0.1)
    for t in [2 + k / 20 for k in range(-20, 21) if k]:
        assert q(F(t)) < f(t)


@given(small, small, small, small, small, small, small)
def test_composition_homomorphism(a1, b1, d1, a2, b2, d2, t):
    try:
        f, g = MobiusCoeffs(a1, b1, d1), MobiusCoeffs(a2, b2, d2)
        lhs, rhs = compose(f, g)(t), f(g(t))
    except (ValueError, PoleHit, Unsupported):
        return
    assert lhs == rhs


def test_iterate_closed_examples():
    mc = MobiusCoeffs(3, 6, 4)
    assert iterate_closed(mc, 1, 0) == F(3, 2)
    assert iterate_closed(mc, 3, 0) == F(129, 65) == iterate_brute(mc, 3, 0)
    assert iterate_closed(mc, 0, F(7, 3)) == F(7, 3)


def test_iterate_closed_pole():
    mc = MobiusCoeffs(3, 6, 4)
    with pytest.raises(PoleHit):
        iterate_closed(mc, 1, -4)
    # the preimage of -4 is the pole of the second iterate
    w = F(-22, 7)  # (3w + 6)/(w + 4) = -4
    assert mc(w) == -4
    with pytest.raises(PoleHit):
        iterate_closed(mc, 2, w)


def test_iterate_closed_matches_brute_force_random():
    rng = random.Random(9)
    done = 0
    while done < 100:
        mc = MobiusCoeffs(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3))
        if mc.discriminant <= 0.05:
            continue
        t, n = rng.uniform(-3, 3), rng.randint(1, 12)
        try:
            a, b = iterate_closed(mc, n, t), iterate_brute(mc, n, t)
        except (PoleHit, DegenerateEigen):
            continue
        if abs(b) > 1e6:
            continue  # ill-conditioned near a pole
        assert a == pytest.approx(b, rel=1e-10, abs=1e-10)
        done += 1


@pytest.mark.parametrize("t0", [0, 1, 3, 5, F(1, 2), F(17, 3)])
def test_candidate_limit_worked_example(t0):
    exact = candidate_limit_exact(MobiusCoeffs(3, 6, 4), t0)
    assert exact == abs(F(5 * t0 - 10) / (t0 + 3))


def test_candidate_limit_continued_fraction():
    assert candidate_limit_exact(MobiusCoeffs(2, 15, 0), 2) == F(24, 5)
    mc = MobiusCoeffs(2, 15, 0)
    assert candidate_limit_alternate(mc, 2) == F(24, 5)


def test_candidate_limit_errors():
    mc = MobiusCoeffs(3, 6, 4)
    assert candidate_limit_exact(mc, 2) == 0
    with pytest.raises(RepellingStart):
        candidate_limit_exact(mc, -3)
    # L L1 = -b, so b + L t0 = 0 exactly at the repelling point; the repelling
    # check wins and PoleStart is only a guard against rounded inputs
    with pytest.raises((PoleStart, RepellingStart)):
        candidate_limit_exact(MobiusCoeffs(2, 15, 0), -3)


def test_candidate_limit_matches_numeric_random():
    rng = random.Random(23)
    done = 0
    while done < 50:
        try:
            mc = MobiusCoeffs(*(F(rng.randint(-20, 20), rng.randint(1, 4)) for _ in range(3)))
            e = eigen(mc)
            spec = mc.spec()
            lo, hi = spec.domain()
            t0 = float(e.L) + rng.uniform(-1, 1)
            if not lo < t0 < hi:
                continue
            exact = float(candidate_limit_exact(mc, F(t0)))
            est = estimate_limit(candidate_sequence_for(spec, t0))
        except (OrbitkitError, ArithmeticError, ValueError):
            continue
        assert est.value == pytest.approx(exact, rel=1e-8), (mc, t0)
        done += 1


def test_fibonacci():
    assert [fibonacci(n) for n in range(1, 12)] == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]
    assert float(fibonacci_residual(1)) == pytest.approx(PHI, rel=1e-15)
    # at n = 10 the residual is still 1.48e-4 away from sqrt(5); n = 11 is the
    # first index inside 1e-4 (checked against a 50-digit mpmath evaluation)
    assert float(fibonacci_residual(10)) - math.sqrt(5) == pytest.approx(1.478294319233336e-4, rel=1e-9)
    assert abs(float(fibonacci_residual(11)) - math.sqrt(5)) < 1e-4
    assert abs(float(fibonacci_residual(25)) - math.sqrt(5)) < 1e-6
    assert abs(float(fibonacci_residual(80)) - math.sqrt(5)) < 1e-15
    with pytest.raises(ValueError):
        fibonacci_residual(81)


def test_golden_continued_fraction_limit():
    # t -> 1 + 1/t, m = -1/phi^2
    est = estimate_limit(candidate_sequence_for(cat.ContinuedFraction(1, 1), 1.0))
    exact = float(candidate_limit_exact(MobiusCoeffs(1, 1, 0), 1))
    assert est.value == pytest.approx(exact, rel=1e-9)
