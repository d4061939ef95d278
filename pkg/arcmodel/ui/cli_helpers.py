"""Helper functions for the arcmodel CLI.

This module turns manifests and curve files into the objects the library
works with: the exhaustion level, Delta, the base collection, the generator
set and the witness candidates.
"""

import json
import logging
import os
from dataclasses import dataclass
from typing import Dict, List, Optional

from arcmodel.core.curves import NormalMultiCurve
from arcmodel.core.exhaustion import Exhaustion
from arcmodel.core.mcg import GeneratorSet
from arcmodel.core.model import choose_base_vertex, dehn_lickorish_generators
from arcmodel.core.registry import StandardSurface, standard_surface
from arcmodel.core.subsurface import SubsurfaceSpec
from arcmodel.core.surface import SurfaceType
from arcmodel.errors import ManifestError, UnknownCurve
from arcmodel.models.base import load_document, parse_document
from arcmodel.models.curves import CurveFile
from arcmodel.models.manifest import Manifest, SideSubsurface, SubsurfaceRef
from arcmodel.utils.cache import content_key

logger = logging.getLogger(__name__)


def load_manifest(path: str, radius: Optional[int] = None, stab_depth: Optional[int] = None,
                  uniform_weights: Optional[bool] = None, output_dir: Optional[str] = None,
                  formats: Optional[List[str]] = None) -> Manifest:
    """Load a manifest and apply command-line overrides.

    Raises:
        ManifestError: On syntax or schema errors
    """
    manifest = load_document(Manifest, path)
    build = {}
    if radius is not None:
        build["radius"] = radius
    if stab_depth is not None:
        build["stab_depth"] = stab_depth
    updates = {}
    if build:
        updates["build"] = manifest.build.model_copy(update=build)
    if uniform_weights:
        updates["generators"] = manifest.generators.model_copy(update={"uniform_weights": True})
    outputs = {}
    if output_dir:
        outputs["directory"] = output_dir
    if formats:
        outputs["formats"] = formats
    if outputs:
        updates["outputs"] = manifest.outputs.model_copy(update=outputs)
    if updates:
        manifest = manifest.model_copy(update=updates)
        # Re-validate so overrides obey the same constraints as the file.
        manifest = parse_document(Manifest, json.dumps(manifest.model_dump(mode="json")), f"{path} (with overrides)")
    return manifest


def manifest_key(manifest: Manifest) -> str:
    """Cache key: the manifest without its output location, plus the code version."""
    return content_key(manifest.model_dump(mode="json", exclude={"outputs"}))


def output_path(manifest: Manifest, suffix: str) -> str:
    return os.path.join(manifest.outputs.directory, f"{manifest.name}{suffix}")


def resolve_subsurface(ref: SubsurfaceRef, std: StandardSurface, delta: Optional[SubsurfaceSpec] = None
                       ) -> SubsurfaceSpec:
    """Turn a subsurface reference into a SubsurfaceSpec on a standard surface.

    Raises:
        ManifestError: If the reference cannot be resolved
    """
    if isinstance(ref, SideSubsurface):
        boundary = NormalMultiCurve.empty(std.triangulation)
        for name in ref.boundary:
            boundary = boundary + std.curve(name)
        return SubsurfaceSpec.containing(boundary, std.curve(ref.side), name=ref.name)
    if ref == "delta":
        if delta is None:
            raise ManifestError("delta is not defined here", "delta")
        return delta
    if ref == "whole":
        return SubsurfaceSpec.whole_surface(std.triangulation, name="whole")
    kind, _, number = ref.partition(":")
    k = int(number)
    if not 1 <= k <= std.genus:
        raise ManifestError(f"{ref} needs 1 <= {k} <= genus {std.genus}", ref)
    return std.handle(k) if kind == "handle" else std.handles(k)


@dataclass
class BuildContext:
    """Everything a manifest resolves to before a build."""
    manifest: Manifest
    exhaustion: Exhaustion
    standard: StandardSurface
    delta: SubsurfaceSpec
    base_subsurface: SubsurfaceSpec
    mu: List[NormalMultiCurve]
    generators: GeneratorSet

    @property
    def key(self) -> str:
        return manifest_key(self.manifest)

    def candidates(self) -> List[SubsurfaceSpec]:
        return [resolve_subsurface(ref, self.standard, self.delta) for ref in self.manifest.analysis.witness_candidates]


def prepare(manifest: Manifest) -> BuildContext:
    """Resolve the exhaustion, Delta, base vertex and generators of a manifest.

    Raises:
        ManifestError: For unknown curve names or subsurface references
        NotFilling: If no candidate fills the base subsurface
    """
    exhaustion = Exhaustion(manifest.exhaustion.max_genus, manifest.exhaustion.punctures)
    level = manifest.level
    std = exhaustion.level(level).standard
    try:
        if manifest.delta is None:
            delta = exhaustion.delta(level)
        else:
            delta = resolve_subsurface(manifest.delta, std)
            delta = SubsurfaceSpec(delta.boundary, delta.regions, name="delta")
        base_ref = manifest.base.subsurface
        base_subsurface = delta if base_ref is None else resolve_subsurface(base_ref, std, delta)
        candidates = None
        if manifest.base.filling_candidates is not None:
            candidates = [[std.curve(name) for name in names] for names in manifest.base.filling_candidates]
    except UnknownCurve as e:
        raise ManifestError(str(e), "base")
    mu = choose_base_vertex(base_subsurface, candidates)
    generators = dehn_lickorish_generators(
        exhaustion, level, manifest.generators.selection, manifest.generators.include,
        manifest.generators.exclude, manifest.generators.uniform_weights, mu,
    )
    logger.info(f"Prepared {manifest.name}: {std.surface.label}, |mu| = {len(mu)}, "
                f"{len(generators.generators)} generators, {len(generators.stabilizer_generators)} stabilizers")
    return BuildContext(manifest, exhaustion, std, delta, base_subsurface, mu, generators)


def load_curves(path: str) -> Dict:
    """Load a curve file.

    Returns:
        Dict with the surface type, its standard surface and the curves

    Raises:
        ManifestError: On syntax, schema or registry errors
    """
    document = load_document(CurveFile, path)
    surface = SurfaceType(document.surface.genus, document.surface.punctures)
    std = standard_surface(surface)
    curves = []
    for index, entry in enumerate(document.curves):
        try:
            if entry.registry is not None:
                curves.append(std.curve(entry.registry))
            else:
                curves.append(NormalMultiCurve(tuple(entry.coords), std.triangulation))
        except (UnknownCurve, ValueError) as e:
            raise ManifestError(str(e), f"{path}: curves.{index}")
    return {"surface": surface, "standard": std, "curves": curves}

