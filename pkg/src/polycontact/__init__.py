"""Exact super-differential calculus and the N=1 polycontact structure on R^{4|4}."""

__version__ = "0.1.0"
