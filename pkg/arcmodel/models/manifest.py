"""
Build manifest models.

A manifest declares the exhaustion level, the base subsurface Delta, the
generator selection, the build parameters, the analysis plan and the output
location. Together with the code version it determines every output byte.
"""

import re
from typing import List, Literal, Optional, Union

from pydantic import Field, field_validator, model_validator

from arcmodel.config import SCHEMA_VERSION
from arcmodel.models.base import ArcModelBaseModel

SUBSURFACE_REF = re.compile(r"^(delta|whole|handle:\d+|handles:\d+)$")

REPORTS = Literal[
    "witness", "asdim", "cocompactness", "section", "qi", "distance-formula",
    "dimension", "saturation", "permutations",
]
FORMATS = Literal["dot", "edge-csv", "csv", "structured-text", "text"]


class SideSubsurface(ArcModelBaseModel):
    """Subsurface given by registered boundary curves and a curve on the chosen side."""
    boundary: List[str] = Field(min_length=1)
    side: str
    name: Optional[str] = None


SubsurfaceRef = Union[str, SideSubsurface]


def _check_ref(ref: SubsurfaceRef) -> SubsurfaceRef:
    if isinstance(ref, str) and not SUBSURFACE_REF.match(ref):
        raise ValueError(f"unknown subsurface {ref!r}; expected delta, whole, handle:K or handles:H")
    return ref


class ExhaustionSpec(ArcModelBaseModel):
    """Levels of the exhaustion: genus 1 .. max_genus, fixed punctures."""
    max_genus: int = Field(ge=1, le=8)
    punctures: int = Field(default=1, ge=1)


class BaseSpec(ArcModelBaseModel):
    """Base vertex mu = mu_0 + boundary of the base subsurface."""
    subsurface: Optional[SubsurfaceRef] = None
    filling_candidates: Optional[List[List[str]]] = None

    @field_validator("subsurface")
    @classmethod
    def check_subsurface(cls, value: Optional[SubsurfaceRef]) -> Optional[SubsurfaceRef]:
        return value if value is None else _check_ref(value)


class GeneratorSpec(ArcModelBaseModel):
    """Generator selection."""
    selection: Literal["lickorish", "humphries"] = "lickorish"
    include: Optional[List[str]] = None
    exclude: List[str] = Field(default_factory=list)
    uniform_weights: bool = False


class BuildSpec(ArcModelBaseModel):
    """Ball parameters."""
    radius: int = Field(ge=0)
    stab_depth: int = Field(default=1, ge=0)


class AnalysisPlan(ArcModelBaseModel):
    """Analyses to run on the built ball."""
    witness_candidates: List[SubsurfaceRef] = Field(default_factory=list)
    reports: List[REPORTS] = Field(default_factory=list)
    distance_threshold: int = Field(default=1, ge=0)
    dimension_scale: float = Field(default=2.0, gt=0)
    samples: Optional[int] = Field(default=None, ge=1)
    permutation_length: int = Field(default=2, ge=0)

    @field_validator("witness_candidates")
    @classmethod
    def check_candidates(cls, value: List[SubsurfaceRef]) -> List[SubsurfaceRef]:
        return [_check_ref(ref) for ref in value]


class OutputSpec(ArcModelBaseModel):
    """Where outputs go."""
    directory: str = "out"
    formats: List[FORMATS] = Field(default_factory=lambda: ["structured-text"])


class Manifest(ArcModelBaseModel):
    """A self-contained build and analysis manifest."""
    schema_version: Literal["1"] = SCHEMA_VERSION
    name: str
    exhaustion: ExhaustionSpec
    level: int = Field(ge=0)
    delta: Optional[SubsurfaceRef] = None
    base: BaseSpec = Field(default_factory=BaseSpec)
    generators: GeneratorSpec = Field(default_factory=GeneratorSpec)
    build: BuildSpec
    analysis: AnalysisPlan = Field(default_factory=AnalysisPlan)
    outputs: OutputSpec = Field(default_factory=OutputSpec)

    @field_validator("delta")
    @classmethod
    def check_delta(cls, value: Optional[SubsurfaceRef]) -> Optional[SubsurfaceRef]:
        if value == "delta":
            raise ValueError("delta cannot refer to itself")
        return value if value is None else _check_ref(value)

    @model_validator(mode="after")
    def check_level(self) -> "Manifest":
        if self.level >= self.exhaustion.max_genus:
            raise ValueError(f"level {self.level} is outside the exhaustion (max_genus {self.exhaustion.max_genus})")
        return self

    @property
    def genus(self) -> int:
        return self.level + 1
