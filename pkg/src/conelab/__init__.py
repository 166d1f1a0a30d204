"""Exact lattice tools for symplectic cones of b+ = 1 four-manifolds."""

__version__ = "0.1.0"
