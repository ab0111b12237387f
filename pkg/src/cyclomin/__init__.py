"""Minimizing the numerical radius of weighted cyclic matrices over weight permutations."""

__version__ = "0.1.0"
