"""Utility helpers for arcmodel."""
