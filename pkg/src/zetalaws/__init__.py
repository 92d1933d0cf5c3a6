"""Zeta laws for arithmetic: Euler products, densities and Gaussian coprimality."""

__version__ = "0.1.0"
