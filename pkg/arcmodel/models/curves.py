"""
Curve and surface file models.

A curve file names a standard surface and lists curves on its standard
triangulation, either by registry id or by normal coordinates. A surface file
is the triangulation and registry of a standard surface.
"""

from typing import Dict, List, Literal, Optional

from pydantic import Field, model_validator

from arcmodel.config import SCHEMA_VERSION
from arcmodel.models.base import ArcModelBaseModel


class SurfaceDecl(ArcModelBaseModel):
    """A surface type S_{g,n}."""
    genus: int = Field(ge=0)
    punctures: int = Field(ge=1)


class CurveEntry(ArcModelBaseModel):
    """One curve, by registry id or by coordinates."""
    name: Optional[str] = None
    registry: Optional[str] = None
    coords: Optional[List[int]] = None

    @model_validator(mode="after")
    def one_source(self) -> "CurveEntry":
        if (self.registry is None) == (self.coords is None):
            raise ValueError("give exactly one of registry or coords")
        return self


class CurveFile(ArcModelBaseModel):
    """Curves on a standard surface."""
    schema_version: Literal["1"] = SCHEMA_VERSION
    surface: SurfaceDecl
    curves: List[CurveEntry] = Field(min_length=1)


class SurfaceFile(ArcModelBaseModel):
    """Triangulation and curve registry of a standard surface."""
    schema_version: Literal["1"] = SCHEMA_VERSION
    surface: SurfaceDecl
    triangulation: Dict
    curves: Dict[str, List[int]]
