"""Quandle construction, chain complexes, homology, operations and checks."""
