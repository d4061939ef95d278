"""Command-line interface for arcmodel.

This module provides the ArcModelCLI class dispatching parsed arguments to
the command implementations.
"""

import logging
import sys
from typing import List, Optional

from arcmodel.config import Settings
from arcmodel.errors import ArcModelError, InvalidSubsurface, ManifestError, UnknownCurve, UnknownFormat
from arcmodel.ui.cli_commands import cmd_analyze, cmd_build, cmd_export, cmd_intersect, cmd_project, cmd_surface
from arcmodel.ui.cli_parser import create_parser

logger = logging.getLogger(__name__)

# Errors in what the user asked for, as opposed to failures of the computation.
USAGE_ERRORS = (ManifestError, UnknownFormat, UnknownCurve, InvalidSubsurface)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class ArcModelCLI:
    """Command-line interface for arcmodel."""

    def __init__(self, settings: Optional[Settings] = None):
        """Initialize the CLI.

        Args:
            settings: Settings to start from; resolved from the environment when omitted
        """
        self.settings = settings
        self.commands = {
            "build": self.build,
            "analyze": self.analyze,
            "intersect": self.intersect,
            "project": self.project,
            "export": self.export,
            "surface": self.surface,
        }

    def run(self, args: Optional[List[str]] = None) -> int:
        """Run the CLI with the given arguments.

        Args:
            args: Command-line arguments

        Returns:
            Exit status
        """
        parser = create_parser()
        parsed_args = parser.parse_args(args)

        self.settings = Settings.from_env(cache_dir=parsed_args.cache_dir, seed=parsed_args.seed)
        log_level = logging.DEBUG if parsed_args.debug else getattr(logging, self.settings.log_level, logging.INFO)
        logging.basicConfig(level=log_level, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                            stream=sys.stderr)

        if not parsed_args.command:
            parser.print_help(sys.stderr)
            return EXIT_USAGE

        args_dict = vars(parsed_args)
        command = args_dict.pop("command")
        for option in ("debug", "cache_dir", "seed"):
            args_dict.pop(option, None)
        try:
            self.commands[command](**args_dict)
        except USAGE_ERRORS as e:
            logger.error(str(e))
            return EXIT_USAGE
        except ArcModelError as e:
            logger.error(f"{type(e).__name__}: {e}")
            return EXIT_FAILURE
        return EXIT_OK

    # Command handlers (delegate to module functions)
    def build(self, **kwargs) -> None:
        cmd_build(self.settings, **kwargs)

    def analyze(self, **kwargs) -> None:
        cmd_analyze(self.settings, **kwargs)

    def intersect(self, **kwargs) -> None:
        cmd_intersect(self.settings, **kwargs)

    def project(self, **kwargs) -> None:
        cmd_project(self.settings, **kwargs)

    def export(self, **kwargs) -> None:
        cmd_export(self.settings, **kwargs)

    def surface(self, **kwargs) -> None:
        cmd_surface(self.settings, **kwargs)


def main(argv: Optional[List[str]] = None) -> None:
    """Run the CLI."""
    cli = ArcModelCLI()
    sys.exit(cli.run(argv))


if __name__ == "__main__":
    main()
