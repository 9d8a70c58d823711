"""Toric lattices, dimer models and principal A-determinants."""

__version__ = "0.1.0"
