"""Exact verification of character sums and degree bounds for 3D4(q)."""

__version__ = "0.1.0"
