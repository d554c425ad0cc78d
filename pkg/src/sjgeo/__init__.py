"""Jacobi group actions, invariant metrics and Laplacians on the
Siegel-Jacobi space and disk, with a numerical verification harness."""

__version__ = "0.1.0"
