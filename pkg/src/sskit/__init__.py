"""Numerical verification kit for shifted symplectic structures on Lie n-groupoid models."""

__version__ = "0.1.0"
