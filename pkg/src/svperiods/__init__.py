"""Poincare series coefficients and single-valued periods of modular forms."""

__version__ = "0.1.0"
