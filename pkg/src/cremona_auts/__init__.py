"""Quadratic plane maps fixing a cubic curve that lift to positive-entropy surface automorphisms."""

__version__ = "0.1.0"
