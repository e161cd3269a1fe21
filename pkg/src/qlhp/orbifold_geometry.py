"""Weighted projective stacks, their twisted sectors, and degree-zero
orbicurve cohomology.

A sector of P(w_0, ..., w_n) is labelled by an exact rational f in [0, 1):
the element exp(2 pi i f) of C^* fixes the coordinates i with f * w_i an
integer, and that support must be nonempty for the sector to exist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def _frac(q: Fraction) -> Fraction:
    return q - math.floor(q)


@dataclass(frozen=True)
class WeightedProjectiveStack:
    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        if not w or any(x < 1 for x in w):
            raise ValueError(f"weights must be a nonempty list of positive integers, got {w}")
        object.__setattr__(self, "weights", w)

    @property
    def dimension(self) -> int:
        return len(self.weights) - 1

    def sector(self, f) -> "InertiaSector":
        return InertiaSector(self, Fraction(f))

    def sectors(self) -> list["InertiaSector"]:
        """Every sector, untwisted one first, ordered by f."""
        fs = {Fraction(j, w) for w in self.weights for j in range(w)}
        return [InertiaSector(self, f) for f in sorted(fs)]

    def __str__(self):
        return f"P({','.join(map(str, self.weights))})"


@dataclass(frozen=True)
class InertiaSector:
    space: WeightedProjectiveStack
    f: Fraction

    def __post_init__(self):
        f = Fraction(self.f)
        object.__setattr__(self, "f", f)
        if not 0 <= f < 1:
            raise ValueError(f"sector label must lie in [0, 1), got {f}")
        if not self.support:
            raise ValueError(f"{self.space} has no sector at f = {f}")

    @property
    def order(self) -> int:
        return self.f.denominator

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, w in enumerate(self.space.weights)
                         if (self.f * w).denominator == 1)

    def inverse(self) -> "InertiaSector":
        return InertiaSector(self.space, _frac(-self.f))


@dataclass(frozen=True)
class LineBundleOnWPS:
    space: WeightedProjectiveStack
    k: int

    def age_at(self, sector: InertiaSector) -> Fraction:
        """Age of the character by which the sector acts on the fibre of O(k)."""
        return _frac(sector.f * self.k)

    def on_marked_curve(self, markings: Sequence[InertiaSector]) -> "OrbiCurveCharacterBundle":
        """f^*O(k) for a genus-zero degree-zero map with the given markings."""
        return OrbiCurveCharacterBundle(0, Fraction(0), tuple(self.age_at(s) for s in markings))

    def __str__(self):
        return f"O({self.k}) on {self.space}"


@dataclass(frozen=True)
class OrbiCurveCharacterBundle:
    genus: int
    degree: Fraction
    point_ages: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "degree", Fraction(self.degree))
        ages = tuple(Fraction(a) for a in self.point_ages)
        object.__setattr__(self, "point_ages", ages)
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        if any(not 0 <= a < 1 for a in ages):
            raise ValueError(f"ages must lie in [0, 1), got {ages}")
        if (self.degree - sum(ages)).denominator != 1:
            raise ValueError(
                f"degree {self.degree} minus total age {sum(ages)} is not an integer")

    @property
    def coarse_degree(self) -> int:
        return int(self.degree - sum(self.point_ages))


def age(s: InertiaSector) -> Fraction:
    return sum((_frac(s.f * w) for i, w in enumerate(s.space.weights) if i not in s.support),
               Fraction(0))


def expected_dimension(target_dimension: int, genus: int, ages: Iterable[Fraction]) -> int:
    """(1 - g)(dim - 3) + n - sum of ages, for degree-zero maps."""
    ages = [Fraction(a) for a in ages]
    v = (1 - genus) * (target_dimension - 3) + len(ages) - sum(ages, Fraction(0))
    if v.denominator != 1:
        raise ValueError(f"virtual dimension {v} is not an integer; markings are inconsistent")
    return int(v)


def vdim_degree_zero(target: WeightedProjectiveStack, genus: int,
                     markings: Sequence[InertiaSector]) -> int:
    if genus not in (0, 1):
        raise ValueError(f"only genus 0 and 1 are supported, got {genus}")
    for s in markings:
        if s.space != target:
            raise ValueError(f"marking {s} does not belong to {target}")
    return expected_dimension(target.dimension, genus, [age(s) for s in markings])


def satisfies_star(L: LineBundleOnWPS) -> bool:
    # degrees of genus-zero maps to P(w) pair nonnegatively with O(1)
    return L.k >= 0


def is_pullback_from_coarse(L: LineBundleOnWPS) -> bool:
    return all(L.k % w == 0 for w in L.space.weights)


def is_convex(L: LineBundleOnWPS) -> bool:
    """Convexity of a positive line bundle: it must come from the coarse space."""
    if not satisfies_star(L):
        raise ValueError(f"{L} does not satisfy the positivity condition")
    return is_pullback_from_coarse(L)


def orbicurve_chi(L: OrbiCurveCharacterBundle) -> int:
    chi = L.degree + (1 - L.genus) - sum(L.point_ages, Fraction(0))
    if chi.denominator != 1:
        raise ValueError(f"Euler characteristic {chi} is not an integer")
    return int(chi)


def h0_h1_degree_zero(L: OrbiCurveCharacterBundle) -> tuple[int, int]:
    """(h^0, h^1) on a smooth genus-zero orbicurve, degree-zero bundle.

    Invariant sections exist only when every marked point acts trivially.
    """
    if L.genus != 0 or L.degree != 0:
        raise ValueError("only genus 0, degree 0 orbicurve bundles are supported")
    h0 = 1 if all(a == 0 for a in L.point_ages) else 0
    return h0, h0 - orbicurve_chi(L)
