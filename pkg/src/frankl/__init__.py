"""Frankl's union-closed condition on finite lattices and subgroup lattices."""

__version__ = "0.1.0"
