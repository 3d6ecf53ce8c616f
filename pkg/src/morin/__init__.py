"""Morin configurations of planes in P^5 and their (2,2) threefolds, in exact arithmetic."""

__version__ = "0.1.0"
