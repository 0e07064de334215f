"""Exact arithmetic for K3 lattices, vector-valued modular forms and Clifford algebras."""

__version__ = "0.1.0"
