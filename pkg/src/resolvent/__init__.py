"""Exact homological algebra over small abelian categories."""

__version__ = "0.1.0"
