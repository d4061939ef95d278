"""
Lower bounds on asymptotic dimension and a finite-scale dimension diagnostic.

The reported bound is the larger of the disjoint witness rank and, when no two
certified witnesses are disjoint, the genus bound g - ceil(chi / 2) of each
certified witness. Unrefuted in-ball witnesses count towards the rank only. Every number comes with the certificates it rests on.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set

import networkx as nx

from arcmodel.analysis.witnesses import (
    DisjointFamily,
    WitnessReport,
    disjoint_witness_family,
    witness_reports,
)
from arcmodel.config import settings
from arcmodel.core.model import ModelGraph
from arcmodel.core.subsurface import SubsurfaceSpec

logger = logging.getLogger(__name__)


def genus_bound(genus: int, euler_characteristic: int) -> int:
    """g - ceil(chi / 2)."""
    return genus + (-euler_characteristic) // 2


@dataclass
class Certificate:
    """One justification of a lower bound."""
    kind: str
    bound: int
    witnesses: List[str]
    detail: Dict = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {"kind": self.kind, "bound": self.bound, "witnesses": self.witnesses, "detail": self.detail}


@dataclass
class AsdimReport:
    """Lower bound on asdim of the model with its certificates."""
    rank: int
    family: DisjointFamily
    genus_bounds: Dict[str, int]
    hyperbolic_criterion: bool
    bound: int
    certificates: List[Certificate]
    reports: List[WitnessReport]

    def to_dict(self) -> Dict:
        return {
            "lower_bound": self.bound,
            "rank": self.rank,
            "family": self.family.to_dict(),
            "genus_bounds": self.genus_bounds,
            "no_disjoint_certified_pair": self.hyperbolic_criterion,
            "certificates": [c.to_dict() for c in self.certificates],
            "witnesses": [r.to_dict() for r in self.reports],
        }


def asdim_lower_bound(m: ModelGraph, candidates: Sequence[SubsurfaceSpec],
                      delta: Optional[SubsurfaceSpec] = None,
                      reports: Optional[Sequence[WitnessReport]] = None) -> AsdimReport:
    """Combine the disjoint witness rank with the genus bounds of certified witnesses.

    Args:
        m: The built ball
        candidates: Candidate witness subsurfaces
        delta: The declared base subsurface
        reports: Witness reports computed earlier for the same candidates

    Returns:
        The report; its bound is a lower bound claim only
    """
    reports = list(reports) if reports is not None else witness_reports(candidates, m, delta)
    family = disjoint_witness_family(candidates, m, delta, reports)
    certificates: List[Certificate] = []
    if family.rank:
        certificates.append(Certificate("disjoint-witnesses", family.rank, [r.name for r in family.reports]))
    certified = [r for r in reports if r.certified]
    no_pair = disjoint_witness_family(candidates, m, delta, certified).rank < 2
    genus_bounds: Dict[str, int] = {}
    for r in reports:
        if not r.certified or not r.subsurface.is_connected:
            continue
        W = r.subsurface
        genus_bounds[r.name] = genus_bound(W.genus, W.euler_characteristic)
        if no_pair:
            certificates.append(Certificate("genus-bound", genus_bounds[r.name], [r.name],
                                            {"genus": W.genus, "euler_characteristic": W.euler_characteristic}))
    bound = max([family.rank] + [c.bound for c in certificates])
    logger.info(f"asdim lower bound {bound} (rank {family.rank}, {len(certificates)} certificates)")
    return AsdimReport(family.rank, family, genus_bounds, no_pair, bound, certificates, reports)


@dataclass
class ScaleDimension:
    """Dimension of a finite metric graph at one scale."""
    value: int
    exact: bool
    scale: float
    blocks: List[List] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {"value": self.value, "exact": self.exact, "upper_bound": not self.exact, "scale": self.scale}


def _neighbourhood_scale(graph: nx.Graph, weight: str) -> float:
    lengths = [d.get(weight, 1) for _, _, d in graph.edges(data=True)]
    return min(lengths) if lengths else 1


def _multiplicity(near: Dict, assignment: Dict) -> int:
    return max((len({assignment[w] for w in ball}) for ball in near.values()), default=0)


def _greedy_blocks(nodes: List, dist: Dict, r: float) -> Dict:
    """Carve balls of radius r / 2 around the first unassigned vertex."""
    assignment = {}
    block = 0
    for v in nodes:
        if v in assignment:
            continue
        for w in nodes:
            if w not in assignment and dist[v].get(w, float("inf")) <= r / 2:
                assignment[w] = block
        block += 1
    return assignment


def _exact_search(nodes: List, dist: Dict, near: Dict, r: float, k: int) -> Optional[Dict]:
    """A partition into blocks of diameter <= r meeting every neighbourhood at most k times."""
    blocks: List[List] = []
    assignment: Dict = {}
    watchers = {v: [w for w in nodes if v in near[w]] for v in nodes}

    def fits(v, b) -> bool:
        return all(dist[v].get(u, float("inf")) <= r for u in blocks[b])

    def within_limit(v) -> bool:
        for w in watchers[v]:
            seen: Set[int] = {assignment[u] for u in near[w] if u in assignment}
            if len(seen) > k:
                return False
        return True

    def place(i: int) -> bool:
        if i == len(nodes):
            return True
        v = nodes[i]
        for b in range(len(blocks) + 1):
            if b == len(blocks):
                blocks.append([])
            elif not fits(v, b):
                continue
            blocks[b].append(v)
            assignment[v] = b
            if within_limit(v) and place(i + 1):
                return True
            del assignment[v]
            blocks[b].pop()
            if not blocks[b]:
                blocks.pop()
        return False

    return dict(assignment) if place(0) else None


def dimension_at_scale(graph: nx.Graph, r: float, weight: str = "length",
                       exact_limit: Optional[int] = None) -> ScaleDimension:
    """Least n such that the vertices split into r-bounded blocks with multiplicity n + 1.

    The multiplicity of a partition is the largest number of blocks met by a
    closed neighbourhood of a vertex, at the scale of the shortest edge.
    Covers reduce to partitions, so only partitions are searched.

    Args:
        graph: A finite graph; edge lengths are read from ``weight`` (default 1)
        r: Diameter bound of the blocks, r > 0
        weight: Edge attribute holding lengths
        exact_limit: Largest vertex count searched exactly; defaults to the
            configured limit. Above it a greedy partition gives an upper bound.

    Returns:
        The value and whether it is exact
    """
    if r <= 0:
        raise ValueError("scale must be positive")
    exact_limit = settings.exact_cover_limit if exact_limit is None else exact_limit
    nodes = list(nx.bfs_tree(graph, next(iter(graph.nodes))).nodes) if graph.number_of_nodes() else []
    for component in nx.connected_components(graph):
        nodes.extend(v for v in sorted(component, key=str) if v not in nodes)
    if not nodes:
        return ScaleDimension(0, True, 0)
    dist = {s: dict(d) for s, d in nx.all_pairs_dijkstra_path_length(graph, weight=weight)}
    scale = _neighbourhood_scale(graph, weight)
    near = {v: [w for w in nodes if dist[v].get(w, float("inf")) <= scale] for v in nodes}

    if len(nodes) > exact_limit:
        assignment = _greedy_blocks(nodes, dist, r)
        value = _multiplicity(near, assignment) - 1
        logger.warning(f"dimension at scale {r} on {len(nodes)} vertices is a greedy upper bound: {value}")
        return ScaleDimension(value, False, scale, _blocks(assignment))

    greedy = _multiplicity(near, _greedy_blocks(nodes, dist, r))
    for k in range(1, greedy + 1):
        assignment = _exact_search(nodes, dist, near, r, k)
        if assignment is not None:
            logger.debug(f"dimension at scale {r}: {k - 1} (exact)")
            return ScaleDimension(k - 1, True, scale, _blocks(assignment))
    return ScaleDimension(greedy - 1, True, scale, _blocks(_greedy_blocks(nodes, dist, r)))


def _blocks(assignment: Dict) -> List[List]:
    grouped: Dict[int, List] = {}
    for v, b in assignment.items():
        grouped.setdefault(b, []).append(v)
    return [grouped[b] for b in sorted(grouped)]
