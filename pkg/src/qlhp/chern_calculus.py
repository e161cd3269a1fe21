"""Total Chern classes and Euler classes of split bundles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .graded_algebra import GradedClass, Ring, RingMismatchError, truncated_inverse


@dataclass(frozen=True)
class SplitBundle:
    """A direct sum of line bundles, recorded by their first Chern classes."""

    ring: Ring
    summands: tuple[GradedClass, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))
        for c in self.summands:
            if c.ring != self.ring:
                raise RingMismatchError(f"summand {c} is not in {self.ring}")
            if not c.is_zero() and c.degree != 1:
                raise ValueError(f"first Chern class {c} is not of degree 1")

    @classmethod
    def of_line_bundles(cls, ring: Ring, twists: Sequence[int], generator: str = "h") -> "SplitBundle":
        """O(k_1) + ... + O(k_r) with c_1 O(k) = k * generator."""
        h = ring.gen(generator)
        return cls(ring, tuple(h * k for k in twists))

    @property
    def rank(self) -> int:
        return len(self.summands)

    def __add__(self, other: "SplitBundle") -> "SplitBundle":
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return SplitBundle(self.ring, self.summands + other.summands)


def total_chern(b: SplitBundle) -> GradedClass:
    c = b.ring.one()
    for c1 in b.summands:
        c = c * (1 + c1)
    return c


def chern_quotient(c_ambient: GradedClass, c_sub: GradedClass,
                   ring: Optional[Ring] = None) -> GradedClass:
    """c(ambient) / c(sub), the total Chern class left over by Whitney.

    For TY + N = i^*TX this returns c(TY) from c(TX) and c(N).  Passing
    ``ring`` first moves both inputs into that ring (the ring of the
    subvariety), which is what truncates the result to its dimension.
    """
    if ring is not None:
        c_ambient, c_sub = c_ambient.in_ring(ring), c_sub.in_ring(ring)
    if c_ambient.constant_term() != 1 or c_sub.constant_term() != 1:
        raise ValueError("total Chern classes must have constant term 1")
    return c_ambient * truncated_inverse(c_sub)


def euler_class(b: SplitBundle) -> GradedClass:
    e = b.ring.one()
    for c1 in b.summands:
        e = e * c1
    return e
