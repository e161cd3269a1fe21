"""Exact checks of the quantum Lefschetz equality for degree-zero moduli
of maps to weighted projective stacks."""

from .checker import CheckReport, check, star_and_convexity_summary
from .graded_algebra import GradedClass, Ring
from .moduli_models import build_named_model

__all__ = ["CheckReport", "GradedClass", "Ring", "build_named_model", "check",
           "star_and_convexity_summary"]
