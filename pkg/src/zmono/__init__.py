"""Exact verification workbench for Z-monomial bases of level-2 A(2)_odd modules."""

__version__ = "0.1.0"
