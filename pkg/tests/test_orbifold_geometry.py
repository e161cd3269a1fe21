import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlhp.orbifold_geometry import (
    LineBundleOnWPS,
    OrbiCurveCharacterBundle,
    WeightedProjectiveStack as WPS,
    age,
    h0_h1_degree_zero,
    is_convex,
    is_pullback_from_coarse,
    orbicurve_chi,
    satisfies_star,
    vdim_degree_zero,
)

EXAMPLE_SPACES = [WPS((1, 1, 2, 2)), WPS((1, 2, 2)), WPS((1, 1, 1, 2, 2, 2, 2)), WPS((1, 1, 2, 2, 2))]


def eigen_age(weights, f):
    """Age from the explicit list of rotation numbers on C^{n+1}."""
    rotations = [f * w - (f * w).numerator // (f * w).denominator for w in weights]
    return sum((r for r in rotations if r), F(0))


def h1_obstructs(L, max_points=None):
    """Brute-force convexity oracle.

    Scan degree-zero genus-zero maps with n copies of one sector
    (n * f integral, so the monodromies multiply to 1) and report whether
    any f^*L has h^1 > 0.
    """
    w = L.space.weights
    max_points = max_points or 2 * max(w)
    for s in L.space.sectors():
        for n in range(max_points + 1):
            if (n * s.f).denominator != 1:
                continue
            ages = [L.age_at(s)] * n
            if (sum(ages, F(0))).denominator != 1:
                continue
            if h0_h1_degree_zero(OrbiCurveCharacterBundle(0, 0, ages))[1] > 0:
                return True
    return False


@pytest.mark.parametrize("weights,expected", [
    ((1, 1, 2, 2), 1),
    ((1, 1, 1, 2, 2, 2, 2), F(3, 2)),
])
def test_age_half(weights, expected):
    s = WPS(weights).sector(F(1, 2))
    assert age(s) == expected == eigen_age(weights, F(1, 2))


def test_age_untwisted():
    for space in EXAMPLE_SPACES:
        assert age(space.sector(0)) == 0


def test_sector_must_exist():
    with pytest.raises(ValueError):
        WPS((1, 1)).sector(F(1, 2))
    with pytest.raises(ValueError):
        WPS((2, 2)).sector(F(3, 2))


@pytest.mark.parametrize("weights,vdim", [
    ((1, 1, 2, 2), 0),
    ((1, 2, 2), 1),
    ((1, 1, 1, 2, 2, 2, 2), 1),
    ((1, 1, 2, 2, 2), 1),
])
def test_vdim_example_values(weights, vdim):
    space = WPS(weights)
    assert vdim_degree_zero(space, 0, [space.sector(F(1, 2))] * 4) == vdim


def test_vdim_errors():
    space = WPS((1, 2, 2))
    with pytest.raises(ValueError):
        vdim_degree_zero(space, 0, [space.sector(F(1, 2))] * 3)
    with pytest.raises(ValueError):
        vdim_degree_zero(space, 2, [])
    assert vdim_degree_zero(WPS((1, 1)), 0, []) == -2


def test_star():
    assert satisfies_star(LineBundleOnWPS(WPS((1, 1, 2, 2)), 1))
    assert satisfies_star(LineBundleOnWPS(WPS((1, 1, 2, 2)), 0))
    assert not satisfies_star(LineBundleOnWPS(WPS((1,) * 5), -1))


@pytest.mark.parametrize("weights,k,pullback", [
    ((1, 1, 2, 2), 1, False),
    ((1, 1, 2, 2), 2, True),
    ((1, 1, 1, 1, 1), 5, True),
])
def test_pullback_from_coarse(weights, k, pullback):
    L = LineBundleOnWPS(WPS(weights), k)
    assert is_pullback_from_coarse(L) is pullback
    assert h1_obstructs(L) is not pullback


@pytest.mark.parametrize("weights,k,convex", [
    ((1, 1, 1, 2, 2, 2, 2), 1, False),
    ((1, 1, 2, 2, 2), 2, True),
    ((1, 1, 1, 1, 1), 5, True),
])
def test_is_convex(weights, k, convex):
    L = LineBundleOnWPS(WPS(weights), k)
    assert is_convex(L) is convex
    assert h1_obstructs(L) is not convex


def test_is_convex_requires_star():
    with pytest.raises(ValueError):
        is_convex(LineBundleOnWPS(WPS((1, 2)), -1))


def test_orbicurve_chi():
    assert orbicurve_chi(OrbiCurveCharacterBundle(0, 0, (F(1, 2),) * 4)) == -1
    assert orbicurve_chi(OrbiCurveCharacterBundle(0, 0)) == 1
    assert orbicurve_chi(OrbiCurveCharacterBundle(0, 0, (F(1, 2),) * 2)) == 0
    # coarse Riemann-Roch on P^1: chi(O(d)) = d + 1
    L = OrbiCurveCharacterBundle(0, 0, (F(1, 2),) * 4)
    assert orbicurve_chi(L) == L.coarse_degree + 1


def test_orbicurve_bundle_validation():
    with pytest.raises(ValueError):
        OrbiCurveCharacterBundle(0, 0, (F(1, 2),))
    with pytest.raises(ValueError):
        OrbiCurveCharacterBundle(0, 0, (F(1),))


def test_h0_h1():
    assert h0_h1_degree_zero(OrbiCurveCharacterBundle(0, 0, (F(1, 2),) * 4)) == (0, 1)
    assert h0_h1_degree_zero(OrbiCurveCharacterBundle(0, 0, (F(0),) * 4)) == (1, 0)
    assert h0_h1_degree_zero(OrbiCurveCharacterBundle(0, 0, (F(1, 2),) * 2)) == (0, 0)
    with pytest.raises(ValueError):
        h0_h1_degree_zero(OrbiCurveCharacterBundle(1, 0))


def test_age_pairing_on_example_spaces():
    for space in EXAMPLE_SPACES:
        for s in space.sectors():
            if s.f == 0:
                continue
            moved = sum(1 for w in space.weights if (s.f * w).denominator != 1)
            assert age(s) + age(s.inverse()) == moved


def test_integral_vdim_on_example_spaces():
    for space in EXAMPLE_SPACES:
        for n in range(0, 9, 2):
            vdim_degree_zero(space, 0, [space.sector(F(1, 2))] * n)


weights = st.lists(st.integers(1, 6), min_size=1, max_size=5)


@settings(max_examples=150)
@given(weights)
def test_age_pairing_random(w):
    space = WPS(tuple(w))
    for s in space.sectors():
        assert age(s) == eigen_age(space.weights, s.f)
        if s.f:
            moved = sum(1 for x in space.weights if (s.f * x).denominator != 1)
            assert age(s) + age(s.inverse()) == moved


@settings(max_examples=100)
@given(weights, st.integers(0, 12))
def test_convexity_matches_h1_oracle(w, k):
    L = LineBundleOnWPS(WPS(tuple(w)), k)
    assert is_convex(L) is not h1_obstructs(L)


@settings(max_examples=100)
@given(st.integers(1, 6).flatmap(
    lambda m: st.lists(st.integers(0, m - 1), max_size=8).map(lambda js: [F(j, m) for j in js])))
def test_h0_minus_h1_is_chi(ages):
    frac_total = sum(ages, F(0))
    if frac_total.denominator != 1:
        ages = ages + [1 - (frac_total - int(frac_total))]
    L = OrbiCurveCharacterBundle(0, 0, tuple(ages))
    h0, h1 = h0_h1_degree_zero(L)
    assert h0 - h1 == orbicurve_chi(L)
    assert h0 >= 0 and h1 >= 0


def test_smooth_spaces_convex_for_nonnegative_k():
    for n, k in itertools.product(range(1, 5), range(0, 6)):
        assert is_convex(LineBundleOnWPS(WPS((1,) * (n + 1)), k))
