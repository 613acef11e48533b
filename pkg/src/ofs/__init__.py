"""Ordered face structures: validation, morphisms, tensor calculus,
free computads and enumeration of multitopes."""

from .model import EmptyFace, OrderedFaceStructure, build, derive, one_equal
from .axioms import validate, is_valid

__all__ = ["EmptyFace", "OrderedFaceStructure", "build", "derive", "one_equal", "validate", "is_valid"]
