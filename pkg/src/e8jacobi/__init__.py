"""Exact computer algebra for W(E8)-invariant Jacobi forms."""

__version__ = "0.1.0"
