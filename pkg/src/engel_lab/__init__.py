"""Exact Leibniz algebras, their bimodules, and Engel flag certificates."""

from .exactlin import GF, QQ, FieldSpec, Matrix, Mod, Subspace
from .leibniz import IdentityViolation, LeibnizAlgebra, StructureConstants, algebra, validate
from .reps import NotARepresentation, Representation, representation

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "FieldSpec", "Matrix", "Mod", "Subspace",
    "IdentityViolation", "LeibnizAlgebra", "StructureConstants", "algebra", "validate",
    "NotARepresentation", "Representation", "representation",
]
