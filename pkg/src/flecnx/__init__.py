"""Finite-model workbench for FLe-algebras and connexive arrows."""
from .algebra import FiniteLattice, FleAlgebra, UnaryMap, validate
from .kernels import BACKEND
from .report import CheckReport
from .terms import check, evaluate, parse, parse_term

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CheckReport",
    "FiniteLattice",
    "FleAlgebra",
    "UnaryMap",
    "check",
    "evaluate",
    "parse",
    "parse_term",
    "validate",
]
