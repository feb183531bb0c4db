"""Figures for subspace-perturb sweep CSVs."""

from .render import EmptyInput, FigureSpec, SchemaError, load_rows, render

__all__ = ["EmptyInput", "FigureSpec", "SchemaError", "load_rows", "render"]
