"""Normalized determinants, chaotic order and Fujii--Seo determinant densities."""

__version__ = "0.1.0"
