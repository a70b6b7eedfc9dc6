"""Abelian group invariants of face 2-coloured triangulations and latin bitrades."""

__version__ = "0.1.0"
