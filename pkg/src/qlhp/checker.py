"""Decide whether iota_*[Y]^vir = [X]^vir cap e has a solution e."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from .graded_algebra import GradedClass, Ring, solve_cap_equation
from .moduli_models import EXAMPLES, UnknownExampleError, build_named_model, degree_zero_vfc, pushforward
from .orbifold_geometry import is_convex, satisfies_star

HOLDS = "HOLDS"
FAILS_DIMENSION = "FAILS_DIMENSION"
FAILS_PROPORTIONALITY = "FAILS_PROPORTIONALITY"
VERDICTS = (HOLDS, FAILS_DIMENSION, FAILS_PROPORTIONALITY)


@dataclass(frozen=True)
class CheckReport:
    example: str
    vdim_x: int
    vdim_y: int
    class_x_vir: GradedClass
    pushforward_y_vir: GradedClass
    star_satisfied: bool
    convex: bool
    verdict: str
    witness: Optional[GradedClass]
    obstruction_note: str

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if (self.verdict == HOLDS) != (self.witness is not None):
            raise ValueError("a witness is present exactly when the verdict is HOLDS")

    @property
    def ring(self) -> Ring:
        return self.class_x_vir.ring

    def to_json(self) -> dict[str, Any]:
        return {
            "example": self.example,
            "vdim_x": self.vdim_x,
            "vdim_y": self.vdim_y,
            "class_x_vir": self.class_x_vir.to_json(),
            "pushforward_y_vir": self.pushforward_y_vir.to_json(),
            "star_satisfied": self.star_satisfied,
            "convex": self.convex,
            "verdict": self.verdict,
            "witness": None if self.witness is None else self.witness.to_json(),
            "obstruction_note": self.obstruction_note,
            "ring": self.ring.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "CheckReport":
        ring = Ring.from_json(data["ring"])
        witness = data["witness"]
        return cls(
            example=data["example"],
            vdim_x=int(data["vdim_x"]),
            vdim_y=int(data["vdim_y"]),
            class_x_vir=GradedClass.from_json(ring, data["class_x_vir"]),
            pushforward_y_vir=GradedClass.from_json(ring, data["pushforward_y_vir"]),
            star_satisfied=bool(data["star_satisfied"]),
            convex=bool(data["convex"]),
            verdict=data["verdict"],
            witness=None if witness is None else GradedClass.from_json(ring, witness),
            obstruction_note=data["obstruction_note"],
        )


def star_and_convexity_summary(name: str) -> tuple[bool, bool]:
    """(every summand of E is positive, E is convex) for a named example."""
    try:
        ex = EXAMPLES[name]
    except KeyError:
        raise UnknownExampleError(f"unknown example {name!r}") from None
    star = all(satisfies_star(L) for L in ex.bundle)
    convex = star and all(is_convex(L) for L in ex.bundle)
    return star, convex


def proportionality_determinant(a: GradedClass, b: GradedClass) -> Optional[Fraction]:
    """det of the coefficient matrix of a and b when their degree has a 2-term basis."""
    if a.is_zero() or b.is_zero() or a.degree != b.degree:
        return None
    basis = a.ring.basis(a.degree)
    if len(basis) != 2:
        return None
    (a0, a1), (b0, b1) = ([x.coefficient(m) for m in basis] for x in (a, b))
    return a0 * b1 - a1 * b0


def check(name: str) -> CheckReport:
    x, y, inc = build_named_model(name)
    ex = EXAMPLES[name]
    class_x = degree_zero_vfc(x)
    push_y = pushforward(inc, degree_zero_vfc(y))
    star, convex = star_and_convexity_summary(name)

    need = x.vdim - y.vdim  # rank of E_{0,n,d}, i.e. the degree e must have
    witness = None
    notes = []
    if need < 0:
        verdict = FAILS_DIMENSION
        notes.append(f"vdim X = {x.vdim} < vdim Y = {y.vdim}: e would need degree {need}")
    else:
        witness = solve_cap_equation(push_y, class_x)
        if witness is not None:
            verdict = HOLDS
            notes.append(f"[X]^vir * ({witness}) = iota_*[Y]^vir")
        else:
            verdict = FAILS_PROPORTIONALITY
            det = proportionality_determinant(class_x, push_y)
            if need == 0:
                notes.append("classes are not scalar multiples")
            else:
                notes.append(f"no class of degree {need} solves the cap equation")
            if det is not None:
                notes.append(f"coefficient determinant {det}")
    if ex.note:
        notes.append(ex.note)
    return CheckReport(
        example=name,
        vdim_x=x.vdim,
        vdim_y=y.vdim,
        class_x_vir=class_x,
        pushforward_y_vir=push_y,
        star_satisfied=star,
        convex=convex,
        verdict=verdict,
        witness=witness,
        obstruction_note="; ".join(notes),
    )
