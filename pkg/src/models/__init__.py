"""Quandles, chains, sparse matrices and JSON file schemas."""
