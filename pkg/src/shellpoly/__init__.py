"""Exact tools for stable shellings, subdivisions and real-rooted h-polynomials."""

from .polyreal import IntPolynomial, RationalPolynomial, interlaces, is_real_rooted

__all__ = ["IntPolynomial", "RationalPolynomial", "interlaces", "is_real_rooted"]
__version__ = "0.1.0"
