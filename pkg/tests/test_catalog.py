import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbitkit import catalog as cat
from orbitkit.errors import DomainError, NoFixedPoint, Unsupported

# (spec, interval on which random points are drawn for derivative checks)
ALL = [
    (cat.SqrtAffine(2), (-1.5, 30)),
    (cat.SqrtAffine(6), (-5.5, 30)),
    (cat.KthRoot(3, 3), (-20, 30)),
    (cat.KthRoot(2.5, 4), (0, 30)),
    (cat.Mobius(3, 6, 4), (-3.5, 30)),
    (cat.Mobius(2, 15, 0), (1, 30)),
    (cat.LogShift(1.0), (-1.5, 30)),
    (cat.LogShift(2.5), (-5, 30)),
    (cat.RationalDemo(), (3.2, 30)),
    (cat.PowerMap(0.5), (0.05, 30)),
    (cat.PowerMap(0.25), (0.05, 30)),
    (cat.ScaledCubeRoot(), (0.05, 30)),
    (cat.ExpConjugate(), (0.3, 30)),
    (cat.ChebyInverse(2), (-0.9, 30)),
    (cat.ChebyInverse(5), (-0.9, 30)),
    (cat.ChebyInverse(3, True), (-2.7, 30)),
    (cat.ContinuedFraction(2, 15), (0.5, 30)),
    (cat.ContinuedFraction(1, 1), (0.5, 30)),
    (cat.NonSmoothDemo(), (-0.2, 2.1)),
    (cat.QuarticDemo(), (0.2, 1.8)),
]
IDS = [cat.format_spec(s) for s, _ in ALL]


@pytest.mark.parametrize("spec,interval", ALL, ids=IDS)
def test_fixed_point_residual(spec, interval):
    info = cat.fixed_point(spec)
    assert abs(spec(info.L) - info.L) <= 1e-12 * max(1.0, abs(info.L))
    assert info.attracting and abs(info.m) < 1
    assert info.m == pytest.approx(spec.deriv(info.L), rel=1e-12)


@pytest.mark.parametrize("spec,interval", ALL, ids=IDS)
def test_analytic_derivatives_match_finite_differences(spec, interval):
    rng = random.Random(3)
    lo, hi = interval
    for _ in range(100):
        t = rng.uniform(lo, hi)
        if isinstance(spec, cat.NonSmoothDemo) and abs(t - 1) < 1e-3:
            continue
        h = 1e-5 * max(1.0, abs(t))
        fd1 = (spec(t + h) - spec(t - h)) / (2 * h)
        assert spec.deriv(t) == pytest.approx(fd1, rel=1e-6, abs=1e-9)
        h2 = 1e-4 * max(1.0, abs(t))
        fd2 = (spec(t + h2) - 2 * spec(t) + spec(t - h2)) / (h2 * h2)
        d2 = spec.deriv2(t)
        assert d2 == pytest.approx(fd2, rel=1e-4, abs=1e-6)


@pytest.mark.parametrize("spec,interval", ALL, ids=IDS)
def test_second_derivative_at_fixed_point_matches_fd(spec, interval):
    info = cat.fixed_point(spec)
    L, h = info.L, 1e-4 * max(1.0, abs(info.L))
    fd = (spec(L + h) - 2 * spec(L) + spec(L - h)) / (h * h)
    assert info.s == pytest.approx(fd, rel=1e-5, abs=1e-6)


@pytest.mark.parametrize("spec,interval", ALL, ids=IDS)
def test_text_form_round_trip(spec, interval):
    text = cat.format_spec(spec)
    again = cat.parse_spec(text)
    assert cat.format_spec(again) == text
    assert again(interval[1]) == pytest.approx(spec(interval[1]), rel=1e-15)


@pytest.mark.parametrize(
    "spec,L,m",
    [
        (cat.SqrtAffine(2), 2, 0.25),
        (cat.KthRoot(3, 3), 3, 1 / 27),
        (cat.Mobius(3, 6, 4), 2, 1 / 6),
        (cat.ExpConjugate(), math.exp(2), 0.25),
        (cat.Mobius(2, 15, 0), 5, -0.6),
        (cat.ChebyInverse(4), 1, 1 / 16),
    ],
)
def test_fixed_point_examples(spec, L, m):
    info = cat.fixed_point(spec)
    assert info.L == pytest.approx(L, rel=1e-14)
    assert info.m == pytest.approx(m, rel=1e-12)


def test_rational_demo_fixed_point():
    assert cat.fixed_point(cat.RationalDemo()).L == pytest.approx(5.0, abs=1e-14)


@given(st.floats(min_value=1.05, max_value=20), st.integers(min_value=2, max_value=7))
def test_kth_root_multiplier_formula(L, k):
    info = cat.fixed_point(cat.KthRoot(L, k))
    assert info.m == pytest.approx(1.0 / (k * L ** (k - 1)), rel=1e-12)


def test_exact_fixed_points():
    assert cat.SqrtAffine(2).exact_fixed_point() == (2, Fraction(1, 4), Fraction(-1, 32))
    assert cat.SqrtAffine(3).exact_fixed_point() is None
    L, m, s = cat.Mobius(3, 6, 4).exact_fixed_point()
    assert (L, m, s) == (2, Fraction(1, 6), Fraction(-1, 18))


def test_contraction_intervals():
    for L in (1.5, 2.0, 3.0):
        lo, hi = cat.contraction_interval(cat.KthRoot(L, 2))
        assert lo == pytest.approx(L - L * L + 0.25, abs=1e-14) and hi == math.inf
        assert cat.KthRoot(L, 2).deriv(lo) == pytest.approx(1.0, rel=1e-10)
    lo, _ = cat.contraction_interval(cat.KthRoot(3, 3))
    assert lo == pytest.approx(3 - 27 + 1 / math.sqrt(27), abs=1e-13)
    for K in (2, 3, 5):
        z, _ = cat.contraction_interval(cat.ChebyInverse(K))
        assert z < 1 and cat.ChebyInverse(K).deriv(z) == pytest.approx(1.0, rel=1e-8)
    with pytest.raises(Unsupported):
        cat.contraction_interval(cat.LogShift(1.0))


def test_verify_root_like_examples():
    assert cat.verify_root_like(cat.SqrtAffine(2), (-1, 10), 64).verdict
    assert cat.verify_root_like(cat.NonSmoothDemo(), (-0.28, 2.2), 64).verdict
    quartic = cat.verify_root_like(cat.QuarticDemo(), (0.5, 1.5), 64)
    assert not quartic.verdict and not quartic.fsecond_negative
    # fixed point outside the interval
    assert not cat.verify_root_like(cat.SqrtAffine(2), (3, 10), 32).verdict


def test_verify_root_like_report_is_conjunction():
    r = cat.verify_root_like(cat.KthRoot(3, 3), (0, 10), 32)
    assert r.verdict == (r.is_contraction and r.fprime_positive and r.fsecond_negative and r.fixed_point_inside)


def test_verify_root_like_errors():
    with pytest.raises(DomainError):
        cat.verify_root_like(cat.SqrtAffine(2), (-5, 10), 32)
    with pytest.raises(ValueError):
        cat.verify_root_like(cat.SqrtAffine(2), (-1, 10), 8)


def test_rational_demo_widest_interval_contains_five():
    lo, hi = cat.widest_root_like_interval(cat.RationalDemo())
    assert lo < 5 < hi
    assert cat.verify_root_like(cat.RationalDemo(), (lo, hi), 256).verdict
    # just below lo the function is no longer a contraction with f'' < 0
    assert not cat.verify_root_like(cat.RationalDemo(), (lo - 0.05, hi), 256).verdict


def test_parse_errors():
    for bad in ("sqrt_affine", "nope(c=1)", "sqrt_affine(c=x)", "kth_root(l=3)", "kth_root(l=3,k=1/2)", "sqrt_affine(q=1)"):
        with pytest.raises(ValueError):
            cat.parse_spec(bad)
    assert cat.parse_spec("cheb_inverse(k=5,scaled=false)") == cat.ChebyInverse(5, False)
    assert cat.parse_spec("mobius(a=3,b=6,d=4)") == cat.Mobius(3, 6, 4)


def test_domain_errors_and_constraints():
    with pytest.raises(DomainError):
        cat.SqrtAffine(2)(-2.5)
    with pytest.raises(ValueError):
        cat.PowerMap(1.5)
    with pytest.raises(ValueError):
        cat.KthRoot(3, 1)
    with pytest.raises(ValueError):
        cat.Mobius(2, 4, 2)


def test_newton_reports_divergence():
    with pytest.raises(NoFixedPoint):
        cat.newton_fixed_point(cat.PowerMap(0.5), 1e-300, max_iter=3)
