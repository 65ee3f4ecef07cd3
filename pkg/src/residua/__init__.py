"""Exact combinatorics of residual points for classical root systems."""

__version__ = "0.1.0"
