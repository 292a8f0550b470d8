"""Finite strict double categories and their globularily generated pieces."""
from .core import (
    DblcatError,
    FinCategory,
    FinDoubleCategory,
    InvalidInput,
    MalformedPresentation,
    UnknownIdentifier,
    ValidationReport,
    Violation,
    validate_category,
    validate_double_category,
)
from .bicat import Fin2Category, DecoratedBicategory, validate_2category, trivial_double, horizontalization
from .gg import GammaAnalysis, vertical_filtration, gamma, is_globularily_generated, vertical_length

__version__ = "0.1.0"

__all__ = [
    "DblcatError", "FinCategory", "FinDoubleCategory", "InvalidInput", "MalformedPresentation",
    "UnknownIdentifier", "ValidationReport", "Violation", "validate_category", "validate_double_category",
    "Fin2Category", "DecoratedBicategory", "validate_2category", "trivial_double", "horizontalization",
    "GammaAnalysis", "vertical_filtration", "gamma", "is_globularily_generated", "vertical_length",
]
