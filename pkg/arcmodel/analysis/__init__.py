"""Coarse analysis of built model balls: witnesses, projections, asdim and distance diagnostics."""
