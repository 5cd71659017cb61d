"""Exact workbench for the two-boundary (symplectic blob) Temperley-Lieb algebra."""

__version__ = "0.1.0"
