"""Exact deciders for classical, statistical, ideal and ideal-star convergence."""

__version__ = "0.1.0"
