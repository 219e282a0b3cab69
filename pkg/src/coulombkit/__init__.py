"""Exact combinatorics of Coulomb and Higgs branches of quiver gauge theories."""
__version__ = "0.1.0"
