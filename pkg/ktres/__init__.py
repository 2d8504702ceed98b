"""Arborescent Koszul-Tate resolutions of quotient rings of polynomial rings."""

__version__ = "0.1.0"
