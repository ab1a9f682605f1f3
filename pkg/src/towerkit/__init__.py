"""Desk-scale workbench for finite simplicial constructions, homotopy limits
over finite categories, and exact integer homology."""

__version__ = "0.1.0"
