"""Diagonal symmetries and automorphism orders of smooth hypersurfaces."""

__version__ = "0.1.0"
