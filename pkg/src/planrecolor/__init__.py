"""List recoloring of plane graphs with certified per-vertex budgets."""

from .plane_graph import ClassReport, Face, PlaneGraph, build

__all__ = ["ClassReport", "Face", "PlaneGraph", "build"]
__version__ = "0.1.0"
