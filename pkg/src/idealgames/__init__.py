"""Finite-resolution workbench for combinatorial ideals on countable sets."""

__version__ = "0.1.0"
