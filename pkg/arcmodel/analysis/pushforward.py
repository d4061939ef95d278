"""
Push-forward of a model ball to a witness subsurface.

Every vertex u of the ball is sent to its projection rho_W(u); an edge of the
ball becomes an edge between the projections (dropped when both ends project
to the same system) of the same length. Paths push forward to paths, so the
projection is 1-Lipschitz.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import networkx as nx

from arcmodel.analysis.witnesses import WitnessReport, is_witness
from arcmodel.core.intersection import intersection_number, self_intersection
from arcmodel.core.model import Edge, ModelGraph
from arcmodel.core.subsurface import ArcCurveSystemInSubsurface, SubsurfaceSpec, subsurface_cut
from arcmodel.errors import NotAWitness

logger = logging.getLogger(__name__)


class PushforwardGraph:
    """
    The model graph pushed forward to a subsurface.

    Args:
        subsurface: The witness W
        systems: Distinct projections, ordered by their first preimage
        projection: Vertex index of the ball -> index into systems
        edges: Pushed-forward edges with the shortest length per pair
    """

    def __init__(self, subsurface: SubsurfaceSpec, systems: List[ArcCurveSystemInSubsurface],
                 projection: Dict[int, int], edges: List[Edge]):
        self.subsurface = subsurface
        self.systems = systems
        self.projection = projection
        self.edges = edges

    @property
    def vertex_count(self) -> int:
        return len(self.systems)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def preimages(self, index: int) -> List[int]:
        return sorted(v for v, p in self.projection.items() if p == index)

    @cached_property
    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        for i, system in enumerate(self.systems):
            graph.add_node(i, digest=system.digest)
        for e in self.edges:
            graph.add_edge(e.source, e.target, length=e.length, generator=e.generator)
        return graph

    @cached_property
    def distances(self) -> Dict[int, Dict[int, int]]:
        return {s: dict(d) for s, d in nx.all_pairs_dijkstra_path_length(self.graph, weight="length")}

    def distance(self, a: int, b: int) -> int:
        return self.distances[a][b]

    def to_dict(self) -> Dict:
        return {
            "subsurface": self.subsurface.to_dict(),
            "vertices": [
                {"index": i, "digest": s.digest, "preimages": self.preimages(i), "system": s.to_dict()}
                for i, s in enumerate(self.systems)
            ],
            "edges": [[e.source, e.target, e.length, e.generator] for e in self.edges],
        }

    def __repr__(self):
        return f"PushforwardGraph({self.subsurface!r}: {self.vertex_count} vertices, {self.edge_count} edges)"


def _require_witness(m: ModelGraph, W: SubsurfaceSpec, delta: Optional[SubsurfaceSpec],
                     report: Optional[WitnessReport]) -> WitnessReport:
    report = report or is_witness(W, m, delta)
    if not report.accepted:
        raise NotAWitness(f"{W!r} is refuted by vertex {report.counterexample} of the ball")
    return report


def projections(m: ModelGraph, W: SubsurfaceSpec) -> List[ArcCurveSystemInSubsurface]:
    """rho_W of every vertex of the ball, in vertex order."""
    return [subsurface_cut(v.curves, W) for v in m.vertices]


def pushforward_model(m: ModelGraph, W: SubsurfaceSpec, delta: Optional[SubsurfaceSpec] = None,
                      report: Optional[WitnessReport] = None) -> PushforwardGraph:
    """Push the ball forward along rho_W.

    Args:
        m: The built ball
        W: A witness (certified or unrefuted) for m
        delta: The declared base subsurface, used when no report is given
        report: A witness report computed earlier

    Returns:
        The push-forward graph

    Raises:
        NotAWitness: If W is refuted on the ball
    """
    _require_witness(m, W, delta, report)
    index: Dict[ArcCurveSystemInSubsurface, int] = {}
    systems: List[ArcCurveSystemInSubsurface] = []
    projection: Dict[int, int] = {}
    for v, rho in zip(m.vertices, projections(m, W)):
        if rho not in index:
            index[rho] = len(systems)
            systems.append(rho)
        projection[v.index] = index[rho]
    best: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for e in m.edges:
        a, b = sorted((projection[e.source], projection[e.target]))
        if a == b:
            continue
        if (a, b) not in best or (e.length, e.generator) < best[(a, b)]:
            best[(a, b)] = (e.length, e.generator)
    edges = [Edge(a, b, length, gen) for (a, b), (length, gen) in sorted(best.items())]
    push = PushforwardGraph(W, systems, projection, edges)
    logger.info(f"Pushed {m!r} forward to {push!r}")
    return push


def lipschitz_violations(push: PushforwardGraph, m: ModelGraph) -> List[Tuple[int, int]]:
    """Vertex pairs (u, v) of the ball with d_W(rho u, rho v) > d_m(u, v)."""
    bad = []
    for u, row in m.distances.items():
        for v, d in row.items():
            if u < v and push.distance(push.projection[u], push.projection[v]) > d:
                bad.append((u, v))
    return bad


@dataclass
class CocompactnessReport:
    """Projected intersection maxima over a ball."""
    subsurface: str
    radius: int
    max_self_intersection: int
    max_edge_intersection: int
    per_vertex: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            "subsurface": self.subsurface,
            "radius": self.radius,
            "max_self_intersection": self.max_self_intersection,
            "max_edge_intersection": self.max_edge_intersection,
        }


def cocompactness_report(m: ModelGraph, W: SubsurfaceSpec, delta: Optional[SubsurfaceSpec] = None,
                         report: Optional[WitnessReport] = None) -> CocompactnessReport:
    """Maxima of i(rho u, rho u) over vertices and i(rho u, rho v) over edges.

    Projections are measured through their curve shadows.

    Raises:
        NotAWitness: If W is refuted on the ball
    """
    _require_witness(m, W, delta, report)
    shadows = [rho.shadows() for rho in projections(m, W)]
    per_vertex = [self_intersection(s) for s in shadows]
    max_edge = 0
    for e in m.edges:
        max_edge = max(max_edge, intersection_number(shadows[e.source], shadows[e.target]))
    result = CocompactnessReport(W.name or W.key, m.radius, max(per_vertex, default=0), max_edge, per_vertex)
    logger.debug(f"Cocompactness of {W!r} at R={m.radius}: {result.max_self_intersection}, {max_edge}")
    return result


def cocompactness_growth(reports: List[CocompactnessReport]) -> bool:
    """Whether either maximum grows along reports ordered by radius."""
    ordered = sorted(reports, key=lambda r: r.radius)
    grows = any(
        b.max_self_intersection > a.max_self_intersection or b.max_edge_intersection > a.max_edge_intersection
        for a, b in zip(ordered, ordered[1:])
    )
    if grows:
        logger.warning(f"Projected intersections of {ordered[0].subsurface} grow with the radius")
    return grows


@dataclass
class SectionReport:
    """A section sigma of the projection and its Lipschitz constant on projected edges."""
    section: Dict[int, int]
    lipschitz: int
    edges_checked: int

    def to_dict(self) -> Dict:
        return {
            "section": {str(k): v for k, v in sorted(self.section.items())},
            "lipschitz": self.lipschitz,
            "edges_checked": self.edges_checked,
        }


def section_report(push: PushforwardGraph, m: ModelGraph) -> SectionReport:
    """Choose a preimage of minimal witness-word weight per projected vertex.

    The Lipschitz constant is the largest ball distance between the chosen
    preimages of the two ends of a projected edge.
    """
    section: Dict[int, int] = {}
    for i in range(push.vertex_count):
        section[i] = min(push.preimages(i), key=lambda v: (m.vertices[v].word_weight, v))
    lipschitz = 0
    for e in push.edges:
        lipschitz = max(lipschitz, m.distance(section[e.source], section[e.target]))
    return SectionReport(section, lipschitz, push.edge_count)
