"""Hochschild cohomology of complete intersections via DG Clifford algebras."""

__version__ = "0.1.0"
