"""Exact certificates for real-rootedness, interlacing, hyperbolicity and
definite determinantal representations."""

__version__ = "0.1.0"
