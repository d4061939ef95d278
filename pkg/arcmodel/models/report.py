"""
Report bundle models.

The bundle collects the outputs of every analysis requested by a manifest,
plus the errors of analyses that failed.
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import Field

from arcmodel.config import SCHEMA_VERSION
from arcmodel.models.base import ArcModelBaseModel


class AnalysisError(ArcModelBaseModel):
    """An analysis that failed without aborting the bundle."""
    analysis: str
    error: str
    kind: str


class GraphSummary(ArcModelBaseModel):
    """Identity of the analysed graph artifact."""
    key: str
    vertices: int
    edges: int
    radius: int
    stab_depth: int


class ReportBundle(ArcModelBaseModel):
    """All reports produced for one manifest."""
    schema_version: Literal["1"] = SCHEMA_VERSION
    manifest: str
    graph: GraphSummary
    witnesses: List[Dict[str, Any]] = Field(default_factory=list)
    asdim: Optional[Dict[str, Any]] = None
    cocompactness: List[Dict[str, Any]] = Field(default_factory=list)
    sections: List[Dict[str, Any]] = Field(default_factory=list)
    qi: Optional[Dict[str, Any]] = None
    distance_formula: Optional[Dict[str, Any]] = None
    dimension: Optional[Dict[str, Any]] = None
    saturation: Optional[Dict[str, Any]] = None
    permutations: Optional[Dict[str, Any]] = None
    errors: List[AnalysisError] = Field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return not any([self.witnesses, self.asdim, self.cocompactness, self.sections, self.qi,
                        self.distance_formula, self.dimension, self.saturation, self.permutations])
