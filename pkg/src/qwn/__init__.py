"""Quantum W_N algebras, their screening currents and Macdonald polynomials, computed exactly."""
from .coeffs import QTRat, parse_qt
from .fock import FockVector, HighestWeight
from .symfunc import Partition, SymPoly, macdonald_apply, macdonald_poly

__all__ = ["QTRat", "parse_qt", "FockVector", "HighestWeight", "Partition", "SymPoly",
           "macdonald_apply", "macdonald_poly"]
__version__ = "0.1.0"
