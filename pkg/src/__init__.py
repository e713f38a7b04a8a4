"""Quandle and rack homology toolkit."""

__version__ = "1.0.0"
