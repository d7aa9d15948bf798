"""Exact computations with finite-dimensional coalgebras and their comodules:
Nakayama functors, Frobenius-type classification, Hopf and coquasi-Hopf
duality checks."""

from .coalg import Coalgebra, validate_coalgebra
from .comod import Comodule, ComoduleMap, find_isomorphism, indecomposables, structure
from .corpus import build, parse_spec
from .errors import (
    ComodkitError,
    Inconclusive,
    InputError,
    InvalidSpec,
    RouteDisagreement,
    ValidationError,
)
from .linalg import GF, QQ, Matrix

__version__ = "0.1.0"

__all__ = [
    "Coalgebra",
    "Comodule",
    "ComoduleMap",
    "ComodkitError",
    "GF",
    "Inconclusive",
    "InputError",
    "InvalidSpec",
    "Matrix",
    "QQ",
    "RouteDisagreement",
    "ValidationError",
    "build",
    "find_isomorphism",
    "indecomposables",
    "parse_spec",
    "structure",
    "validate_coalgebra",
]
