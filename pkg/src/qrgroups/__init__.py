"""Quasi-random finite groups: exact degrees, mixing bounds, product-free sets."""

__version__ = "0.1.0"
