"""
Witness subsurfaces of a built model ball.

A witness is met essentially by every vertex of the model. On a finite ball
this is checked vertex by vertex, unless the subsurface contains the declared
non-displaceable base subsurface Delta, in which case every translate
g(mu_0) fills g(Delta) and the subsurface is certified outright.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from arcmodel.core.model import ModelGraph
from arcmodel.core.subsurface import SubsurfaceSpec, are_disjoint, contains, essential_intersection_check

logger = logging.getLogger(__name__)

CERTIFIED = "certified-by-delta"
UNREFUTED = "no-counterexample-in-ball"
REFUTED = "refuted"


@dataclass
class WitnessReport:
    """Witness status of a subsurface on a ball.

    Refuted reports carry the first vertex (in vertex order) that misses a
    component of the subsurface, and the index of that component.
    """
    subsurface: SubsurfaceSpec
    status: str
    radius: int
    stab_depth: int
    vertices_checked: int = 0
    counterexample: Optional[int] = None
    counterexample_digest: Optional[str] = None
    missed_component: Optional[int] = None

    @property
    def accepted(self) -> bool:
        return self.status != REFUTED

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    @property
    def name(self) -> str:
        return self.subsurface.name or self.subsurface.key

    def to_dict(self) -> Dict:
        return {
            "subsurface": self.name,
            "key": self.subsurface.key,
            "status": self.status,
            "radius": self.radius,
            "stab_depth": self.stab_depth,
            "vertices_checked": self.vertices_checked,
            "counterexample": self.counterexample,
            "counterexample_digest": self.counterexample_digest,
            "missed_component": self.missed_component,
            "genus": self.subsurface.genus,
            "euler_characteristic": self.subsurface.euler_characteristic,
        }


def is_witness(W: SubsurfaceSpec, m: ModelGraph, delta: Optional[SubsurfaceSpec] = None) -> WitnessReport:
    """Witness status of W on the ball m.

    Args:
        W: The candidate subsurface
        m: The built ball
        delta: The declared non-displaceable base subsurface, if any

    Returns:
        A certified report when W is connected and contains delta, otherwise
        the result of checking every vertex of the ball
    """
    if delta is not None and W.is_connected and contains(W, delta):
        logger.debug(f"{W!r} contains delta, certified")
        return WitnessReport(W, CERTIFIED, m.radius, m.stab_depth)
    components = W.components()
    for v in m.vertices:
        for idx, component in enumerate(components):
            if not essential_intersection_check(v.curves, component):
                logger.info(f"{W!r} refuted by vertex {v.index} ({v.digest})")
                return WitnessReport(W, REFUTED, m.radius, m.stab_depth, v.index + 1,
                                     v.index, v.digest, idx)
    return WitnessReport(W, UNREFUTED, m.radius, m.stab_depth, m.vertex_count)


def witness_reports(candidates: Sequence[SubsurfaceSpec], m: ModelGraph,
                    delta: Optional[SubsurfaceSpec] = None) -> List[WitnessReport]:
    return [is_witness(W, m, delta) for W in candidates]


def disjointness_graph(subsurfaces: Sequence[SubsurfaceSpec]) -> nx.Graph:
    """Graph on indices, joined when the two subsurfaces are disjoint."""
    graph = nx.Graph()
    graph.add_nodes_from(range(len(subsurfaces)))
    for a in range(len(subsurfaces)):
        for b in range(a + 1, len(subsurfaces)):
            if are_disjoint(subsurfaces[a], subsurfaces[b]):
                graph.add_edge(a, b)
    return graph


@dataclass
class DisjointFamily:
    """A largest pairwise-disjoint family of accepted connected witnesses."""
    reports: List[WitnessReport] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.reports)

    def to_dict(self) -> Dict:
        return {"rank": self.rank, "witnesses": [r.name for r in self.reports]}


def disjoint_witness_family(candidates: Sequence[SubsurfaceSpec], m: ModelGraph,
                            delta: Optional[SubsurfaceSpec] = None,
                            reports: Optional[Sequence[WitnessReport]] = None) -> DisjointFamily:
    """Largest pairwise-disjoint subfamily of candidates that are witnesses on m.

    Refuted and disconnected candidates are skipped. The search is an exact
    maximum-clique search on the disjointness graph; ties go to the family
    listed first in candidate order.
    """
    if reports is None:
        reports = witness_reports(candidates, m, delta)
    accepted = [r for r in reports if r.accepted and r.subsurface.is_connected]
    if not accepted:
        return DisjointFamily()
    graph = disjointness_graph([r.subsurface for r in accepted])
    best: Tuple[int, ...] = ()
    for clique in nx.find_cliques(graph):
        ordered = tuple(sorted(clique))
        if len(ordered) > len(best) or (len(ordered) == len(best) and ordered < best):
            best = ordered
    logger.debug(f"Disjoint witness rank {len(best)} among {len(accepted)} accepted candidates")
    return DisjointFamily([accepted[i] for i in best])


def disjoint_witness_rank(candidates: Sequence[SubsurfaceSpec], m: ModelGraph,
                          delta: Optional[SubsurfaceSpec] = None,
                          reports: Optional[Sequence[WitnessReport]] = None) -> int:
    """Maximum number of pairwise-disjoint connected witnesses among candidates."""
    return disjoint_witness_family(candidates, m, delta, reports).rank
