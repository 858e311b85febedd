"""Exact counts and certified growth bounds for languages avoiding forbidden factors."""

from ._backend import BACKEND
from .core import (
    Alphabet,
    CountTable,
    Explicit,
    LengthSpectrum,
    PowerFree,
    RationalInterval,
    Recognizer,
    normalize_family,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Alphabet",
    "CountTable",
    "Explicit",
    "LengthSpectrum",
    "PowerFree",
    "RationalInterval",
    "Recognizer",
    "normalize_family",
]
