"""arcmodel - finite balls of arc and curve models of mapping class groups.

arcmodel builds truncated orbit graphs of multicurve collections under
twist-generated subgroups of mapping class groups and analyses them with
witness subsurfaces, subsurface projections and coarse diagnostics.
"""

__version__ = "0.1.0"
