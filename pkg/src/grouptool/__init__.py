"""Finitely presented groups, group extensions and BNS-invariant certificates."""

__version__ = "0.1.0"
