"""Explicit Ramanujan graph and bigraph constructions with exact spectral checks."""

__version__ = "0.1.0"
