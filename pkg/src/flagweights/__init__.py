"""Exact weight-set, semistability and normality computations for SL(n) flag varieties."""

__version__ = "0.1.0"
