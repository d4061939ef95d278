"""Command implementations for the arcmodel CLI.

This module provides the build, analyze, intersect, project, export and
surface commands. Data goes to files or standard output; everything else is
logged.
"""

import json
import logging
import os
from typing import Dict, List, Optional, Tuple

from arcmodel.analysis.asdim import asdim_lower_bound, dimension_at_scale
from arcmodel.analysis.diagnostics import distance_formula_fit, qi_fit, stabilizer_permutations
from arcmodel.analysis.pushforward import cocompactness_report, pushforward_model, section_report
from arcmodel.analysis.witnesses import WitnessReport, witness_reports
from arcmodel.config import Settings
from arcmodel.core.export import EXTENSIONS, export_graph, normalize_format, render
from arcmodel.core.intersection import intersection_number
from arcmodel.core.model import ModelGraph, build_ball, saturation_report
from arcmodel.core.registry import standard_surface
from arcmodel.core.subsurface import essential_intersection_check, subsurface_cut
from arcmodel.core.surface import SurfaceType
from arcmodel.errors import ArcModelError, ManifestError, MissingArtifact, SurfaceMismatch
from arcmodel.models.base import dump_document
from arcmodel.models.curves import SurfaceDecl, SurfaceFile
from arcmodel.models.manifest import SUBSURFACE_REF
from arcmodel.models.report import AnalysisError, GraphSummary, ReportBundle
from arcmodel.ui.cli_helpers import BuildContext, load_curves, load_manifest, output_path, prepare, resolve_subsurface
from arcmodel.ui.formatters import format_build_summary, format_json, pair_table, qi_table, witness_table
from arcmodel.utils.cache import ArtifactCache, atomic_write

logger = logging.getLogger(__name__)

GRAPH_ARTIFACT = "graph.json"


def _artifact_name(kind: str) -> str:
    return f"graph{EXTENSIONS[kind]}"


def build_graph(context: BuildContext, cache: Optional[ArtifactCache]) -> Tuple[ModelGraph, bool]:
    """Build the ball of a manifest, or load it from the cache.

    Returns:
        The graph and whether it came from the cache
    """
    key = context.key
    if cache is not None:
        text = cache.load(key, GRAPH_ARTIFACT)
        if text is not None:
            return ModelGraph.from_dict(json.loads(text)), True
    build = context.manifest.build
    m = build_ball(context.mu, context.generators, build.radius, build.stab_depth, context.base_subsurface)
    if cache is not None:
        cache.store(key, GRAPH_ARTIFACT, render(m, "text"))
    return m, False


def cmd_build(settings: Settings, manifest: str, radius: Optional[int] = None, stab_depth: Optional[int] = None,
              uniform_weights: Optional[bool] = None, output_dir: Optional[str] = None,
              formats: Optional[List[str]] = None, no_cache: bool = False) -> List[str]:
    """Build the graph of a manifest and write it in the requested formats.

    Args:
        settings: Resolved settings (cache directory)
        manifest: Manifest path
        radius: Override of R
        stab_depth: Override of L
        uniform_weights: Force uniform generator weights
        output_dir: Override of the output directory
        formats: Override of the output formats
        no_cache: Skip the artifact cache

    Returns:
        Paths of the written artifacts
    """
    doc = load_manifest(manifest, radius, stab_depth, uniform_weights, output_dir, formats)
    context = prepare(doc)
    cache = None if no_cache else ArtifactCache(settings.cache_dir)
    m, cached = build_graph(context, cache)
    paths = []
    for fmt in dict.fromkeys(doc.outputs.formats):
        kind = normalize_format(fmt)
        text = cache.load(context.key, _artifact_name(kind)) if cache is not None else None
        if text is None:
            text = render(m, kind)
            if cache is not None:
                cache.store(context.key, _artifact_name(kind), text)
        path = output_path(doc, EXTENSIONS[kind])
        atomic_write(path, text)
        paths.append(path)
    print(format_build_summary(m, context.key, cached, paths))
    return paths


def _load_graph(context: BuildContext, settings: Settings, graph: Optional[str]) -> ModelGraph:
    if graph is not None:
        return _load_graph_file(graph)
    text = ArtifactCache(settings.cache_dir).load(context.key, GRAPH_ARTIFACT)
    if text is None:
        local = output_path(context.manifest, EXTENSIONS["json"])
        if os.path.exists(local):
            with open(local, "r", encoding="utf-8") as f:
                text = f.read()
    if text is None:
        raise MissingArtifact(f"no graph artifact for {context.manifest.name}; run build first")
    return ModelGraph.from_dict(json.loads(text))


def run_analyses(context: BuildContext, m: ModelGraph, settings: Settings) -> ReportBundle:
    """Run the manifest's analysis plan; failures are collected, not raised."""
    plan = context.manifest.analysis
    bundle = ReportBundle(
        manifest=context.manifest.name,
        graph=GraphSummary(key=context.key, vertices=m.vertex_count, edges=m.edge_count,
                           radius=m.radius, stab_depth=m.stab_depth),
    )
    reports: List[WitnessReport] = []

    def attempt(name: str, action) -> None:
        try:
            action()
        except (ArcModelError, ValueError) as e:
            logger.error(f"Analysis {name} failed: {e}")
            bundle.errors.append(AnalysisError(analysis=name, error=str(e), kind=type(e).__name__))

    def witnesses() -> None:
        reports.extend(witness_reports(context.candidates(), m, context.delta))

    needs_witnesses = {"witness", "asdim", "cocompactness", "section", "distance-formula"}
    if needs_witnesses & set(plan.reports):
        attempt("witness", witnesses)
    accepted = [r for r in reports if r.accepted]

    if "witness" in plan.reports:
        bundle.witnesses = [r.to_dict() for r in reports]
    if "asdim" in plan.reports:
        def asdim() -> None:
            bundle.asdim = asdim_lower_bound(m, [r.subsurface for r in reports], context.delta, reports).to_dict()
        attempt("asdim", asdim)
    if "cocompactness" in plan.reports:
        for r in accepted:
            attempt(f"cocompactness:{r.name}", lambda r=r: bundle.cocompactness.append(
                cocompactness_report(m, r.subsurface, report=r).to_dict()))
    if "section" in plan.reports:
        def section(r: WitnessReport) -> None:
            push = pushforward_model(m, r.subsurface, report=r)
            data = section_report(push, m).to_dict()
            data.update({"subsurface": r.name, "vertices": push.vertex_count, "edges": push.edge_count})
            bundle.sections.append(data)
        for r in accepted:
            attempt(f"section:{r.name}", lambda r=r: section(r))
    if "qi" in plan.reports:
        attempt("qi", lambda: setattr(bundle, "qi", qi_fit(m).to_dict()))
    if "distance-formula" in plan.reports:
        def distance_formula() -> None:
            fit = distance_formula_fit(m, [r.subsurface for r in accepted], plan.distance_threshold,
                                       plan.samples or settings.distance_samples, settings.seed)
            bundle.distance_formula = fit.to_dict()
        attempt("distance-formula", distance_formula)
    if "dimension" in plan.reports:
        attempt("dimension", lambda: setattr(
            bundle, "dimension", dimension_at_scale(m.graph, plan.dimension_scale).to_dict()))
    if "saturation" in plan.reports:
        attempt("saturation", lambda: setattr(bundle, "saturation", saturation_report(
            context.mu, context.generators, m.radius, m.stab_depth)))
    if "permutations" in plan.reports:
        attempt("permutations", lambda: setattr(bundle, "permutations", stabilizer_permutations(
            context.generators, context.mu, plan.permutation_length).to_dict()))
    return bundle


def cmd_analyze(settings: Settings, manifest: str, radius: Optional[int] = None, stab_depth: Optional[int] = None,
                uniform_weights: Optional[bool] = None, output_dir: Optional[str] = None,
                graph: Optional[str] = None) -> List[str]:
    """Run the analysis plan on the manifest's graph artifact.

    Raises:
        MissingArtifact: If no graph artifact exists
    """
    doc = load_manifest(manifest, radius, stab_depth, uniform_weights, output_dir)
    context = prepare(doc)
    m = _load_graph(context, settings, graph)
    bundle = run_analyses(context, m, settings)
    paths = [output_path(doc, ".report.json")]
    atomic_write(paths[0], dump_document(bundle))
    if bundle.witnesses:
        paths.append(output_path(doc, ".witnesses.csv"))
        atomic_write(paths[-1], witness_table(bundle.witnesses))
    if bundle.distance_formula:
        paths.append(output_path(doc, ".pairs.csv"))
        atomic_write(paths[-1], pair_table(bundle.distance_formula["rows"]))
    if bundle.qi:
        paths.append(output_path(doc, ".qi.csv"))
        atomic_write(paths[-1], qi_table(bundle.qi["rows"]))
    for path in paths:
        print(path)
    if bundle.errors:
        logger.warning(f"{len(bundle.errors)} analyses failed; see {paths[0]}")
    return paths


def cmd_intersect(settings: Settings, first: str, second: str) -> int:
    """Print i(first, second).

    Raises:
        SurfaceMismatch: If the two files declare different surfaces
    """
    a = load_curves(first)
    b = load_curves(second)
    if a["surface"] != b["surface"]:
        raise SurfaceMismatch(f"{first} is on {a['surface'].label}, {second} on {b['surface'].label}")
    value = intersection_number(a["curves"], b["curves"])
    print(value)
    return value


def cmd_project(settings: Settings, curves: str, subsurface: str) -> Dict:
    """Print the projection of a curve file to a subsurface as structured text."""
    loaded = load_curves(curves)
    std = loaded["standard"]
    if subsurface == "delta":
        raise ManifestError("delta needs a manifest; use whole, handle:K or handles:H", "--subsurface")
    if not SUBSURFACE_REF.match(subsurface):
        raise ManifestError(f"unknown subsurface {subsurface!r}", "--subsurface")
    W = resolve_subsurface(subsurface, std)
    rho = subsurface_cut(loaded["curves"], W)
    data = rho.to_dict()
    data["shadows"] = [list(c.coords) for c in rho.shadows()]
    print(format_json(data))
    return data


def cmd_export(settings: Settings, output: str, fmt: str = "dot", graph: Optional[str] = None,
               manifest: Optional[str] = None, witnesses: bool = False) -> str:
    """Export a graph artifact, optionally annotated with accepted witnesses."""
    if graph is None and manifest is None:
        raise ManifestError("give --graph or --manifest", "export")
    context = prepare(load_manifest(manifest)) if manifest is not None else None
    if context is not None:
        m = _load_graph(context, settings, graph)
    else:
        m = _load_graph_file(graph)
    annotation = None
    if witnesses:
        if context is None:
            raise ManifestError("--witnesses needs --manifest", "export")
        annotation = {}
        for r in witness_reports(context.candidates(), m, context.delta):
            if r.accepted:
                annotation[r.name] = [v.index for v in m.vertices
                                      if essential_intersection_check(v.curves, r.subsurface)]
    path = export_graph(m, fmt, output, annotation)
    print(path)
    return str(path)


def _load_graph_file(graph: str) -> ModelGraph:
    if not os.path.exists(graph):
        raise MissingArtifact(f"graph artifact {graph} does not exist")
    with open(graph, "r", encoding="utf-8") as f:
        return ModelGraph.from_dict(json.load(f))


def cmd_surface(settings: Settings, genus: int, punctures: int = 1, output: Optional[str] = None) -> str:
    """Emit the standard triangulation and curve registry of S_{genus,punctures}."""
    std = standard_surface(SurfaceType(genus, punctures))
    data = std.to_dict()
    document = SurfaceFile(surface=SurfaceDecl(genus=genus, punctures=punctures),
                           triangulation=data["triangulation"], curves=data["curves"])
    text = dump_document(document)
    if output:
        atomic_write(output, text)
        print(output)
    else:
        print(text, end="")
    return text

