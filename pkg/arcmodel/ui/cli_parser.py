"""Command-line argument parser for arcmodel.

This module provides the argument parser for the arcmodel CLI.
"""

import argparse
from typing import List, Optional

FORMAT_CHOICES = ["dot", "csv", "text", "edge-csv", "structured-text"]


def _add_build_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--manifest", required=True, help="Path of the build manifest")
    parser.add_argument("--radius", type=int, help="Override the weighted radius R")
    parser.add_argument("--stab-depth", type=int, help="Override the stabilizer word depth L")
    parser.add_argument("--uniform-weights", action="store_true", default=None,
                        help="Give every generator length 1")
    parser.add_argument("--output-dir", help="Override the output directory")


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser for the arcmodel CLI.

    Returns:
        Argument parser
    """
    parser = argparse.ArgumentParser(
        prog="arcmodel",
        description="arcmodel - finite balls of arc and curve models of mapping class groups",
    )
    parser.add_argument("--debug", action="store_true", help="Enable debug logging")
    parser.add_argument("--cache-dir", help="Artifact cache directory (default $ARCMODEL_CACHE_DIR or ~/.arcmodel/cache)")
    parser.add_argument("--seed", type=int, help="Seed for sampled diagnostics")

    subparsers = parser.add_subparsers(dest="command", help="Command to execute")

    build_parser = subparsers.add_parser("build", help="Build the model ball of a manifest")
    _add_build_options(build_parser)
    build_parser.add_argument("--format", dest="formats", action="append", choices=FORMAT_CHOICES,
                              help="Output format (repeatable; default from the manifest)")
    build_parser.add_argument("--no-cache", action="store_true", help="Ignore and do not fill the cache")

    analyze_parser = subparsers.add_parser("analyze", help="Run the analysis plan of a manifest")
    _add_build_options(analyze_parser)
    analyze_parser.add_argument("--graph", help="Graph artifact (structured text); default from the cache")

    intersect_parser = subparsers.add_parser("intersect", help="Print the intersection number of two curve files")
    intersect_parser.add_argument("first", help="First curve file")
    intersect_parser.add_argument("second", help="Second curve file")

    project_parser = subparsers.add_parser("project", help="Project a curve file to a subsurface")
    project_parser.add_argument("curves", help="Curve file")
    project_parser.add_argument("--subsurface", required=True,
                                help="whole, handle:K or handles:H on the curve file's surface")

    export_parser = subparsers.add_parser("export", help="Export a graph artifact")
    export_parser.add_argument("--graph", help="Graph artifact (structured text)")
    export_parser.add_argument("--manifest", help="Manifest whose cached graph to export")
    export_parser.add_argument("--format", dest="fmt", default="dot", choices=FORMAT_CHOICES, help="Output format")
    export_parser.add_argument("--output", required=True, help="Output path")
    export_parser.add_argument("--witnesses", action="store_true",
                               help="Annotate vertices with the manifest's accepted witnesses")

    surface_parser = subparsers.add_parser("surface", help="Emit the standard triangulation and curve registry")
    surface_parser.add_argument("--genus", type=int, required=True, help="Genus g")
    surface_parser.add_argument("--punctures", type=int, default=1, help="Punctures n")
    surface_parser.add_argument("--output", help="Output path (default standard output)")

    return parser


def parse_args(args: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments.

    Args:
        args: Command-line arguments

    Returns:
        Parsed arguments
    """
    parser = create_parser()
    return parser.parse_args(args)
