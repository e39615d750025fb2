"""Exact computations for the trigonal quartics y^3 = x^4 + (p2 x^2 + p5 x + p8) y + p6 x^2 + p9 x + p12."""

from .errors import (
    ConvergenceError,
    DegenerateFamilyMemberError,
    DegenerateSpecializationError,
    DomainError,
    InconclusiveError,
    ScopeError,
)
from .family import FamilyPoint, discriminant, enumerate_family, is_minimal, is_smooth, point_count

__version__ = "0.1.0"

__all__ = [
    "FamilyPoint", "discriminant", "enumerate_family", "is_minimal", "is_smooth", "point_count",
    "ConvergenceError", "DegenerateFamilyMemberError", "DegenerateSpecializationError",
    "DomainError", "InconclusiveError", "ScopeError",
]
