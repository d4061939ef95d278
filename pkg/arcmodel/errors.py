"""Exception hierarchy for arcmodel.

Every error raised on purpose by the library derives from ArcModelError so
the CLI can tell computation failures from programming errors.
"""


class ArcModelError(Exception):
    """Base class for all arcmodel errors."""


class UnsupportedSurface(ArcModelError, ValueError):
    """The surface has no ideal triangulation (chi >= 0 or no punctures)."""


class UnflippableEdge(ArcModelError, ValueError):
    """Both sides of the edge lie in one triangle."""


class TriangulationMismatch(ArcModelError, ValueError):
    """Operands live on different triangulations."""


class SurfaceMismatch(ArcModelError, ValueError):
    """A mapping class and a curve live on different surfaces."""


class NotAdmissible(ArcModelError, ValueError):
    """A coordinate vector violates the triangle conditions for curves."""


class NotConnected(ArcModelError, ValueError):
    """A connected curve was required."""


class NotEssential(ArcModelError, ValueError):
    """The curve is empty or peripheral."""


class InvalidSubsurface(ArcModelError, ValueError):
    """The side selection does not describe a valid compact essential subsurface."""


class NotInProjectionDomain(ArcModelError, ValueError):
    """The collection does not meet every component of the subsurface essentially."""


class NotFilling(ArcModelError, ValueError):
    """No registered candidate system fills the subsurface."""


class EmptyGeneratorSet(ArcModelError, ValueError):
    """A model build was requested without generators."""


class UnknownFormat(ArcModelError, ValueError):
    """Export format is not one of dot, edge-csv, structured-text."""


class UnknownCurve(ArcModelError, KeyError):
    """A curve id is not present in the registry."""


class NotAWitness(ArcModelError):
    """The subsurface is refuted as a witness on the built ball."""


class ManifestError(ArcModelError):
    """A manifest or curve file failed schema validation."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class MissingArtifact(ArcModelError, FileNotFoundError):
    """The graph artifact needed by an analysis does not exist."""


class NotAStabilizer(ArcModelError, ValueError):
    """A stabilizer generator moves the base collection."""
