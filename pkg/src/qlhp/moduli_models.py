"""Degree-zero moduli stacks of stable maps, modelled by their coarse
cohomology rings, obstruction bundles and the inclusions between them.

Four examples are built in:

``quintic-genus1``
    Genus-one, one-pointed, degree-zero maps to P^4 and to a quintic
    threefold.  Both moduli spaces are (target) x M_{1,1}.
``p1122-trivial``
    Four mu_2-marked points, genus zero, Y = P(1,2,2) inside
    X = P(1,1,2,2) cut out by O(1).
``p1112222-nontrivial``
    Four mu_2-marked points, genus zero, Y = P(1,1,2,2,2) inside
    X = P(1,1,1,2,2,2,2) cut out by O(1) + O(2).  The moduli stacks are
    P(2,2,2,2) x M_{0,4} and P(2,2,2) x M_{0,4}.
``convex-control``
    Three untwisted points, genus zero, the hyperplane P^2 in P^3.

Facts about the stacks themselves (gerbe order and class, which fibre a
bundle restricts to) are stored here rather than derived.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .chern_calculus import SplitBundle, chern_quotient, euler_class, total_chern
from .graded_algebra import GradedClass, Ring
from .orbifold_geometry import (
    InertiaSector,
    LineBundleOnWPS,
    WeightedProjectiveStack,
    age,
    expected_dimension,
)

# integral of psi_1 over M_{1,1}; only enters the integration normalization
PSI_M11 = Fraction(1, 24)


class UnknownExampleError(KeyError):
    pass


@dataclass(frozen=True)
class ModuliModel:
    """A smooth degree-zero moduli stack with an obstruction bundle.

    The virtual class is determined either by ``obstruction_euler_c1``
    (obstruction bundle = that line bundle to the power ``obstruction_rank``)
    or, for genus one, by ``tangent_chern`` and ``target_dimension``
    (obstruction bundle = dual Hodge bundle tensor TX).
    """

    name: str
    ring: Ring
    stack_dimension: int
    vdim: int
    genus: int
    target_dimension: int
    marking_ages: tuple[Fraction, ...]
    gerbe_order: int = 1
    gerbe_class: tuple[int, int] = (1, 1)
    obstruction_rank: int = 0
    obstruction_euler_c1: Optional[GradedClass] = None
    tangent_chern: Optional[GradedClass] = None
    target: Optional[WeightedProjectiveStack] = None
    markings: tuple[InertiaSector, ...] = ()

    def __post_init__(self):
        if self.vdim != self.stack_dimension - self.obstruction_rank:
            raise ValueError(
                f"{self.name}: vdim {self.vdim} != {self.stack_dimension} - {self.obstruction_rank}")
        if self.gerbe_order < 1:
            raise ValueError("gerbe order must be positive")
        if any(s not in (1, -1) for s in self.gerbe_class):
            raise ValueError(f"gerbe class entries must be +-1, got {self.gerbe_class}")
        c1 = self.obstruction_euler_c1
        if c1 is not None:
            if c1.ring != self.ring:
                raise ValueError("obstruction class lives in the wrong ring")
            if not c1.is_zero() and c1.degree != 1:
                raise ValueError(f"obstruction c_1 {c1} is not of degree 1")
        if self.obstruction_rank > 0 and c1 is None and self.tangent_chern is None:
            raise ValueError(f"{self.name}: obstruction data missing")


@dataclass(frozen=True)
class InclusionModel:
    """The morphism iota: Y_{g,n,delta} -> X_{g,n,d} induced by Y in X."""

    source: ModuliModel
    target: ModuliModel
    codimension: int
    pushforward_of_one: GradedClass
    pullback_dictionary: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        one = self.pushforward_of_one
        if one.ring != self.target.ring:
            raise ValueError("iota_* 1 must live in the target ring")
        if one.is_zero() or one.degree != self.codimension:
            raise ValueError(f"iota_* 1 = {one} is not homogeneous of degree {self.codimension}")
        src, tgt = self.source.ring, self.target.ring
        for a, b in self.pullback_dictionary.items():
            da = src.generators[src.index(a)].degree
            db = tgt.generators[tgt.index(b)].degree
            if da != db:
                raise ValueError(f"dictionary maps {a} (degree {da}) to {b} (degree {db})")


@dataclass(frozen=True)
class HodgeCalibration:
    """Data fixing c_1 of R^1 pi_* ev^* O(1) on a mu_2-gerbe moduli stack.

    ``fiber_restriction_c1`` is its restriction to the gerby fibre over a
    point of M_{0,4}; ``hodge_integral`` is the integral of c_1 of the
    Hodge bundle over (B mu_2)_{0,4,0}; ``psi_integral_coarse`` is the
    integral of psi_1 over M_{0,4}.
    """

    fiber_restriction_c1: GradedClass
    hodge_integral: Fraction
    psi_integral_coarse: Fraction

    def __post_init__(self):
        if self.fiber_restriction_c1.is_zero():
            raise ValueError("fibre restriction must be nonzero")


def genus1_degree0_vfc(D: int, c_total_TX: GradedClass,
                       hyperplane: str = "h", psi: str = "psi") -> GradedClass:
    """c_D(TX) - c_{D-1}(TX) psi, the virtual class of X_{1,1,0} = X x M_{1,1}."""
    ring = c_total_TX.ring
    ring.index(hyperplane)
    psi_class = ring.gen(psi)
    if c_total_TX.constant_term() != 1:
        raise ValueError("total Chern class must have constant term 1")
    if D < 1:
        raise ValueError("dimension must be positive")
    h_order = ring.generators[ring.index(hyperplane)].order
    if D >= h_order:
        raise ValueError(f"dimension {D} exceeds the truncation {hyperplane}^{h_order}")
    return c_total_TX.degree_part(D) - c_total_TX.degree_part(D - 1) * psi_class


def calibrate_euler_V(c: HodgeCalibration, gerbe_order: int, psi: str = "psi") -> GradedClass:
    """Fibre restriction plus the psi correction matching the Hodge integral.

    The dual Hodge bundle integrates to -hodge_integral over the gerby
    M_{0,4} fibre, where psi integrates to psi_integral_coarse / gerbe_order.
    """
    if gerbe_order < 1:
        raise ValueError("gerbe order must be positive")
    if c.psi_integral_coarse == 0:
        raise ValueError("psi integral must be nonzero")
    alpha = -Fraction(c.hodge_integral) / (Fraction(c.psi_integral_coarse) / gerbe_order)
    ring = c.fiber_restriction_c1.ring
    return c.fiber_restriction_c1 + ring.gen(psi) * alpha


def degree_zero_vfc(m: ModuliModel) -> GradedClass:
    if m.tangent_chern is not None:
        return genus1_degree0_vfc(m.target_dimension, m.tangent_chern)
    if m.obstruction_rank == 0:
        return m.ring.one()
    return m.obstruction_euler_c1 ** m.obstruction_rank


def pushforward(i: InclusionModel, a: GradedClass) -> GradedClass:
    """iota_*(iota^* alpha) = alpha * iota_* 1, with alpha read off via the dictionary."""
    if a.ring != i.source.ring:
        raise ValueError("class does not live on the source of the inclusion")
    for name, e in zip(a.ring.names, _used_exponents(a)):
        if e and name not in i.pullback_dictionary:
            raise ValueError(f"generator {name!r} is not pulled back from the target")
    lifted = a.in_ring(i.target.ring, rename=i.pullback_dictionary)
    return lifted * i.pushforward_of_one


def _used_exponents(a: GradedClass):
    used = [0] * a.ring.rank
    for m in a.terms:
        used = [max(u, e) for u, e in zip(used, m)]
    return used


# --- named examples --------------------------------------------------------

MU2_HODGE_INTEGRAL = Fraction(1, 4)
M04_PSI_INTEGRAL = Fraction(1)


@dataclass(frozen=True)
class Example:
    """Everything known about a named example besides its moduli models."""

    name: str
    summary: str
    ambient: WeightedProjectiveStack
    bundle: tuple[LineBundleOnWPS, ...]
    genus: int
    expected_verdict: str
    note: str = ""


EXAMPLES: dict[str, Example] = {}


def _register(ex: Example):
    EXAMPLES[ex.name] = ex


_register(Example(
    "quintic-genus1",
    "genus-one degree-zero maps: quintic threefold in P^4",
    WeightedProjectiveStack((1, 1, 1, 1, 1)),
    (LineBundleOnWPS(WeightedProjectiveStack((1, 1, 1, 1, 1)), 5),),
    genus=1,
    expected_verdict="FAILS_PROPORTIONALITY",
    note="failure is genus-one, not convexity",
))
_register(Example(
    "p1122-trivial",
    "P(1,2,2) in P(1,1,2,2) via O(1), four mu_2 points: dimensions disagree",
    WeightedProjectiveStack((1, 1, 2, 2)),
    (LineBundleOnWPS(WeightedProjectiveStack((1, 1, 2, 2)), 1),),
    genus=0,
    expected_verdict="FAILS_DIMENSION",
))
_register(Example(
    "p1112222-nontrivial",
    "P(1,1,2,2,2) in P(1,1,1,2,2,2,2) via O(1)+O(2), four mu_2 points: classes not proportional",
    WeightedProjectiveStack((1, 1, 1, 2, 2, 2, 2)),
    (LineBundleOnWPS(WeightedProjectiveStack((1, 1, 1, 2, 2, 2, 2)), 1),
     LineBundleOnWPS(WeightedProjectiveStack((1, 1, 1, 2, 2, 2, 2)), 2)),
    genus=0,
    expected_verdict="FAILS_PROPORTIONALITY",
))
_register(Example(
    "convex-control",
    "hyperplane P^2 in P^3 via O(1), three untwisted points: convex, equality holds",
    WeightedProjectiveStack((1, 1, 1, 1)),
    (LineBundleOnWPS(WeightedProjectiveStack((1, 1, 1, 1)), 1),),
    genus=0,
    expected_verdict="HOLDS",
))


def _hp_ring(h_order: int, psi_order: int, normalization) -> Ring:
    return Ring.build([("h", 1, h_order), ("psi", 1, psi_order)], normalization)


def hodge_calibration(ring: Ring) -> HodgeCalibration:
    # V restricted to P(2,...,2) is O(1), whose c_1 is h/2 on the coarse P^n
    return HodgeCalibration(ring.gen("h") * Fraction(1, 2), MU2_HODGE_INTEGRAL, M04_PSI_INTEGRAL)


def _mu2_models(name, x_space, y_space, x_fixed_dim, y_fixed_dim, gerbe_class):
    """Models for four mu_2 points on P(w) with both 1s and 2s among the weights.

    Degree-zero maps land in the locus P(2,...,2) of even weights.  The
    moduli stack is that gerbe times M_{0,4}; each odd weight contributes
    one copy of V = R^1 pi_* ev^* O(1) to the obstruction bundle.
    """
    models = []
    for space, fixed_dim in ((x_space, x_fixed_dim), (y_space, y_fixed_dim)):
        ring = _hp_ring(fixed_dim + 1, 2, Fraction(1, 2))
        sector = space.sector(Fraction(1, 2))
        rank = sum(1 for w in space.weights if w % 2)
        c1 = calibrate_euler_V(hodge_calibration(ring), 2)
        stack_dim = fixed_dim + 1
        models.append(ModuliModel(
            name=f"{name}:{space}",
            ring=ring,
            stack_dimension=stack_dim,
            vdim=stack_dim - rank,
            genus=0,
            target_dimension=space.dimension,
            marking_ages=(age(sector),) * 4,
            gerbe_order=2,
            gerbe_class=gerbe_class,
            obstruction_rank=rank,
            obstruction_euler_c1=c1,
            target=space,
            markings=(sector,) * 4,
        ))
    return models


def _build_quintic():
    p4 = EXAMPLES["quintic-genus1"].ambient
    x_ring = _hp_ring(5, 2, PSI_M11)
    y_ring = _hp_ring(4, 2, PSI_M11)
    c_tx = total_chern(SplitBundle.of_line_bundles(x_ring, [1] * 5))
    c_normal = total_chern(SplitBundle.of_line_bundles(x_ring, [5]))
    c_ty = chern_quotient(c_tx, c_normal, ring=y_ring)
    x = ModuliModel("quintic-genus1:X", x_ring, stack_dimension=5, vdim=1, genus=1,
                    target_dimension=4, marking_ages=(Fraction(0),),
                    obstruction_rank=4, tangent_chern=c_tx, target=p4,
                    markings=(p4.sector(0),))
    y = ModuliModel("quintic-genus1:Y", y_ring, stack_dimension=4, vdim=1, genus=1,
                    target_dimension=3, marking_ages=(Fraction(0),),
                    obstruction_rank=3, tangent_chern=c_ty)
    normal = SplitBundle.of_line_bundles(x_ring, [5])
    inc = InclusionModel(y, x, 1, euler_class(normal), {"h": "h", "psi": "psi"})
    return x, y, inc


def _build_trivial():
    ex = EXAMPLES["p1122-trivial"]
    x, y = _mu2_models(ex.name, ex.ambient, WeightedProjectiveStack((1, 2, 2)),
                       1, 1, (-1, 1))
    # both stacks sit over the same mu_2-fixed locus P(2,2)
    inc = InclusionModel(y, x, 0, x.ring.one(), {"h": "h", "psi": "psi"})
    return x, y, inc


def _build_nontrivial():
    ex = EXAMPLES["p1112222-nontrivial"]
    x, y = _mu2_models(ex.name, ex.ambient, WeightedProjectiveStack((1, 1, 2, 2, 2)),
                       3, 2, (-1, 1))
    # Y's fixed locus P(2,2,2) is a hyperplane in P(2,2,2,2), cut out by the O(2) section
    inc = InclusionModel(y, x, 1, x.ring.gen("h"), {"h": "h", "psi": "psi"})
    return x, y, inc


def _build_convex_control():
    p3 = EXAMPLES["convex-control"].ambient
    p2 = WeightedProjectiveStack((1, 1, 1))
    x_ring = Ring.build([("h", 1, 4)])
    y_ring = Ring.build([("h", 1, 3)])
    x = ModuliModel("convex-control:X", x_ring, stack_dimension=3, vdim=3, genus=0,
                    target_dimension=3, marking_ages=(Fraction(0),) * 3,
                    target=p3, markings=(p3.sector(0),) * 3)
    y = ModuliModel("convex-control:Y", y_ring, stack_dimension=2, vdim=2, genus=0,
                    target_dimension=2, marking_ages=(Fraction(0),) * 3,
                    target=p2, markings=(p2.sector(0),) * 3)
    inc = InclusionModel(y, x, 1, x_ring.gen("h"), {"h": "h"})
    return x, y, inc


_BUILDERS = {
    "quintic-genus1": _build_quintic,
    "p1122-trivial": _build_trivial,
    "p1112222-nontrivial": _build_nontrivial,
    "convex-control": _build_convex_control,
}


def build_named_model(name: str) -> tuple[ModuliModel, ModuliModel, InclusionModel]:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownExampleError(
            f"unknown example {name!r}; choose from {', '.join(_BUILDERS)}") from None
    return builder()


def model_vdim_consistent(m: ModuliModel) -> bool:
    """Does the stored vdim agree with the dimension formula?"""
    return expected_dimension(m.target_dimension, m.genus, m.marking_ages) == m.vdim
