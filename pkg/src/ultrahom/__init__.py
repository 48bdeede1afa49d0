"""Finite approximations of inner ultrahomogeneous groups, with certificates."""

__version__ = "0.1.0"
