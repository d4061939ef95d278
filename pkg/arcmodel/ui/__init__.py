"""Command-line front-end for arcmodel."""
