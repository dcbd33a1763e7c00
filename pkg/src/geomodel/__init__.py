"""Exact construction of geometric models X -> Y for finite Galois extensions of function fields."""

__version__ = "0.1.0"
