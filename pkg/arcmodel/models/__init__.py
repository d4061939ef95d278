"""
Data models for arcmodel.

This module provides Pydantic models for manifests, curve files and report bundles.
"""

from .base import ArcModelBaseModel, load_document, parse_document
from .curves import CurveFile, SurfaceFile
from .manifest import Manifest
from .report import ReportBundle

__all__ = [
    'ArcModelBaseModel',
    'CurveFile',
    'Manifest',
    'ReportBundle',
    'SurfaceFile',
    'load_document',
    'parse_document',
]
