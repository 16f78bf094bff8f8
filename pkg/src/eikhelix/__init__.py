"""Helix classification of curves in Minkowski 3-space against eikonal fields."""

__version__ = "0.1.0"
