"""Exact continued fractions of square roots with long periods."""
from .cf_engine import PeriodicCF, expand_sqrt, unit_from_expansion
from .exact_arith import QuadRat, square_free_probe
from .families import FamilyId, derive_by_signflip, generate

__all__ = [
    "FamilyId",
    "PeriodicCF",
    "QuadRat",
    "derive_by_signflip",
    "expand_sqrt",
    "generate",
    "square_free_probe",
    "unit_from_expansion",
]
