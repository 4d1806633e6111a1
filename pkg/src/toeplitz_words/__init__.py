"""Simple Toeplitz and Sturmian subshifts: words, invariants, spectral numerics."""

__version__ = "0.1.0"
