"""Exact computations with Jacobi-Jordan and pre-Jacobi-Jordan algebras."""
from .fields import GF, QQ
from .algebras import FDAlgebra, check_structure
from .representations import BiRepresentation, Representation, regular_representation
from .relative_rb import RelRBContext, is_relative_rb

__all__ = ["GF", "QQ", "FDAlgebra", "check_structure", "BiRepresentation", "Representation",
           "regular_representation", "RelRBContext", "is_relative_rb"]
__version__ = "0.1.0"
