"""Realization engines: decide and certify which orbit data a quadratic map fixing a cubic can realize."""
from .certificate import (
    NoSuitableRoot,
    RealizationCertificate,
    ShapeViolation,
    Status,
    first_passage,
    resimulate,
)
from .classify import Classification, Verdict, classify, realize
from .cusp import realize_concurrent_lines, realize_cusp
from .reducible import ConicLineParams, conic_line_preset, realize_conic_line, realize_triangle, search_triangle
from .torus import realize_torus

__all__ = [
    "Classification",
    "ConicLineParams",
    "NoSuitableRoot",
    "RealizationCertificate",
    "ShapeViolation",
    "Status",
    "Verdict",
    "classify",
    "conic_line_preset",
    "first_passage",
    "realize",
    "realize_concurrent_lines",
    "realize_conic_line",
    "realize_cusp",
    "realize_torus",
    "realize_triangle",
    "resimulate",
    "search_triangle",
]
