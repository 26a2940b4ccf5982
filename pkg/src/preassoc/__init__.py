"""Associativity and preassociativity of variadic functions on finite carriers."""

from .core import (
    EPS,
    BinaryMap,
    Carrier,
    CheckReport,
    Codomain,
    PreassocError,
    PreconditionError,
    TabulatedVariadic,
    UnaryMap,
    concat,
    enumerate_words,
    is_epsilon_standard,
    is_standard,
)

__version__ = "0.1.0"

__all__ = [
    "EPS", "BinaryMap", "Carrier", "CheckReport", "Codomain", "PreassocError",
    "PreconditionError", "TabulatedVariadic", "UnaryMap", "concat", "enumerate_words",
    "is_epsilon_standard", "is_standard",
]
