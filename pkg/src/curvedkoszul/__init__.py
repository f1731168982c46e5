"""Curved Koszul duality for quadratic-linear-constant algebras, computed exactly over Q."""

__version__ = "0.1.0"
