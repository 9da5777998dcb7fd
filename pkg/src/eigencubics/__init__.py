"""Eigenpoints of ternary cubics: exact alignment configurations plus numeric checks."""

from .scalars import Scalar, parse_scalar, sqrt_exact, sqrt_or_adjoin

__all__ = ["Scalar", "parse_scalar", "sqrt_exact", "sqrt_or_adjoin"]
__version__ = "0.1.0"
