"""Exact hyperplane-arrangement computations over the rationals."""

__version__ = "0.1.0"
