"""
Finite balls of the metric arc-and-curve model.

Vertices are the translates g(mu) of a base collection, identified by their
canonical form. From a vertex u = g(mu) the search proposes g h z^(+-1)(mu)
for every generator z and every stabilizer word h of length at most L, with
an edge of the generator's weight.
"""

import hashlib
import heapq
import json
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from arcmodel.config import settings
from arcmodel.core.curves import NormalMultiCurve, collection_key, component_curves
from arcmodel.core.exhaustion import Exhaustion
from arcmodel.core.intersection import intersection_number
from arcmodel.core.mcg import (
    Generator,
    GeneratorSet,
    MappingClass,
    Twist,
    apply_collection,
    dehn_twist,
    stabilizes,
)
from arcmodel.core.registry import StandardSurface, surface_for
from arcmodel.core.subsurface import SubsurfaceSpec
from arcmodel.core.surface import IdealTriangulation
from arcmodel.errors import NotFilling, TriangulationMismatch

logger = logging.getLogger(__name__)

Collection = Tuple[NormalMultiCurve, ...]


def collection_digest(curves: Iterable[NormalMultiCurve]) -> str:
    """Short content digest of a canonical curve collection."""
    payload = json.dumps([list(c) for c in collection_key(curves)])
    return hashlib.sha1(payload.encode("utf-8")).hexdigest()[:12]


def canonical_collection(curves: Iterable[NormalMultiCurve]) -> Collection:
    return tuple(sorted(curves, key=lambda c: c.coords))


# -- base vertex ------------------------------------------------------------

def choose_base_vertex(delta: SubsurfaceSpec,
                       candidates: Optional[Sequence[Sequence[NormalMultiCurve]]] = None) -> List[NormalMultiCurve]:
    """mu = mu_0 + boundary(delta) for the first candidate mu_0 filling delta.

    Args:
        delta: The base subsurface
        candidates: Candidate systems mu_0 to try in order; defaults to the
            registered twist curves inside delta, then all registered curves inside it

    Returns:
        The components of mu in canonical order

    Raises:
        NotFilling: When no candidate fills delta
    """
    if candidates is None:
        std = surface_for(delta.triangulation)
        inside = std.curves_inside(delta)
        twists = set(std.lickorish_names())
        candidates = [
            [std.curve(n) for n in inside if n in twists],
            [std.curve(n) for n in inside],
        ]
    for candidate in candidates:
        mu0 = {}
        for curve in candidate:
            for component in component_curves(curve):
                mu0.setdefault(component.coords, component)
        if mu0 and delta.fills_with(list(mu0.values())):
            mu = dict(mu0)
            for component in component_curves(delta.boundary):
                mu.setdefault(component.coords, component)
            logger.info(f"Base vertex for {delta!r}: {len(mu0)} filling curves + {len(mu) - len(mu0)} boundary")
            return list(canonical_collection(mu.values()))
    raise NotFilling(f"no candidate system fills {delta!r}")


# -- generators ---------------------------------------------------------------

def twist_generators(std: StandardSurface, names: Sequence[str], uniform_weights: bool = False,
                     base: Optional[Sequence[NormalMultiCurve]] = None) -> GeneratorSet:
    """Twists along named registry curves, weighted by enumeration index.

    When a base collection is given, every candidate twist (the generators
    and the twists along base components) that fixes it set-wise becomes a
    stabilizer generator.
    """
    generators = [
        Generator(dehn_twist(std.curve(name), 1, name), 1 if uniform_weights else index, name)
        for index, name in enumerate(names, 1)
    ]
    stabilizers: List[MappingClass] = []
    if base is not None:
        seen = set()
        candidates = [(g.name, g.mapping_class) for g in generators]
        for component in canonical_collection(c for curve in base for c in component_curves(curve)):
            if component.is_essential:
                candidates.append((std.name_of(component), dehn_twist(component, 1, std.name_of(component))))
        for name, twist in candidates:
            coords = twist.letters[0].curve.coords
            if coords in seen:
                continue
            seen.add(coords)
            if stabilizes(twist, base):
                stabilizers.append(twist)
        logger.debug(f"{len(stabilizers)} stabilizer generators among {len(candidates)} twists")
    return GeneratorSet(generators, stabilizers, base)


def dehn_lickorish_generators(e: Exhaustion, level: int, selection: str = "lickorish",
                              include: Optional[Sequence[str]] = None, exclude: Optional[Sequence[str]] = None,
                              uniform_weights: bool = False,
                              base: Optional[Sequence[NormalMultiCurve]] = None) -> GeneratorSet:
    """Twists along the registered curves up to a level of the exhaustion.

    Args:
        e: The exhaustion
        level: Level index n
        selection: "lickorish" (all alpha, beta, gamma up to level n) or
            "humphries" (the Humphries chain of level n)
        include: If given, only these names are kept
        exclude: Names to drop
        uniform_weights: Give every generator length 1
        base: Base collection used to pick stabilizer generators

    Returns:
        The generator set with weights given by enumeration index
    """
    if selection not in ("lickorish", "humphries"):
        raise ValueError(f"unknown generator selection {selection!r}")
    names = e.enumerated_curves(level, selection)
    if include:
        names = [n for n in names if n in include]
    if exclude:
        names = [n for n in names if n not in exclude]
    return twist_generators(e.level(level).standard, names, uniform_weights, base)


def verify_intersection_condition(Z: GeneratorSet, mu: Sequence[NormalMultiCurve],
                                  bound: Optional[int] = None) -> Tuple[int, List[Dict]]:
    """max over z of i(mu, z mu), with the per-generator table.

    Generators above ``bound`` (the configured intersection bound by
    default) are flagged in the table and logged.
    """
    bound = settings.intersection_bound if bound is None else bound
    table = []
    for index, gen in enumerate(Z.generators, 1):
        value = intersection_number(list(mu), apply_collection(gen.mapping_class, mu))
        exceeds = value > bound
        if exceeds:
            logger.warning(f"Generator {gen.name}: i(mu, z mu) = {value} exceeds bound {bound}")
        table.append({"index": index, "name": gen.name, "weight": gen.weight,
                      "intersection": value, "exceeds": exceeds})
    maximum = max((row["intersection"] for row in table), default=0)
    return maximum, table


# -- model graphs ---------------------------------------------------------------

@dataclass
class Vertex:
    """A vertex g(mu) with the witness word g."""
    index: int
    curves: Collection
    word: MappingClass
    word_weight: int
    distance: int

    @cached_property
    def key(self) -> Tuple[Tuple[int, ...], ...]:
        return collection_key(self.curves)

    @cached_property
    def digest(self) -> str:
        return collection_digest(self.curves)


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    length: int
    generator: int


class ModelGraph:
    """
    A finite ball of the model graph around the base vertex (index 0).

    Args:
        triangulation: The triangulation all curves live on
        base: The base collection mu
        generator_set: The generators used for the build
        vertices: Vertices ordered by (distance, digest)
        edges: Undirected edges, source < target
        radius: Weighted radius R
        stab_depth: Stabilizer word depth L
    """

    def __init__(self, triangulation: IdealTriangulation, base: Collection, generator_set: GeneratorSet,
                 vertices: List[Vertex], edges: List[Edge], radius: int, stab_depth: int):
        self.triangulation = triangulation
        self.base = base
        self.generator_set = generator_set
        self.vertices = vertices
        self.edges = edges
        self.radius = radius
        self.stab_depth = stab_depth
        self._by_key = {v.key: v for v in vertices}

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def vertex_of(self, curves: Iterable[NormalMultiCurve]) -> Optional[Vertex]:
        return self._by_key.get(collection_key(curves))

    @cached_property
    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        for v in self.vertices:
            graph.add_node(v.index, digest=v.digest)
        for e in self.edges:
            graph.add_edge(e.source, e.target, length=e.length, generator=e.generator)
        return graph

    @cached_property
    def distances(self) -> Dict[int, Dict[int, int]]:
        """All-pairs weighted distances."""
        return {s: dict(d) for s, d in nx.all_pairs_dijkstra_path_length(self.graph, weight="length")}

    def distance(self, a: int, b: int) -> int:
        return self.distances[a][b]

    def edge_keys(self) -> set:
        return {(self.vertices[e.source].digest, self.vertices[e.target].digest, e.length) for e in self.edges}

    def to_dict(self) -> Dict:
        return {
            "triangulation": self.triangulation.to_dict(),
            "radius": self.radius,
            "stab_depth": self.stab_depth,
            "base": [list(c.coords) for c in self.base],
            "generators": [
                {"name": g.name, "weight": g.weight, "curve": list(g.twist.curve.coords)}
                for g in self.generator_set.generators
            ],
            "stabilizer_generators": [_word_to_dict(h) for h in self.generator_set.stabilizer_generators],
            "vertices": [
                {
                    "index": v.index,
                    "digest": v.digest,
                    "distance": v.distance,
                    "word_weight": v.word_weight,
                    "curves": [list(c.coords) for c in v.curves],
                    "word": _word_to_dict(v.word),
                }
                for v in self.vertices
            ],
            "edges": [[e.source, e.target, e.length, e.generator] for e in self.edges],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "ModelGraph":
        t = IdealTriangulation.from_dict(data["triangulation"])
        generators = [
            Generator(MappingClass(t, [Twist(NormalMultiCurve(g["curve"], t), 1, g["name"])]), g["weight"], g["name"])
            for g in data["generators"]
        ]
        stabilizers = [_word_from_dict(t, w) for w in data["stabilizer_generators"]]
        vertices = [
            Vertex(v["index"], tuple(NormalMultiCurve(c, t) for c in v["curves"]),
                   _word_from_dict(t, v["word"]), v["word_weight"], v["distance"])
            for v in data["vertices"]
        ]
        edges = [Edge(*e) for e in data["edges"]]
        base = tuple(NormalMultiCurve(c, t) for c in data["base"])
        return cls(t, base, GeneratorSet(generators, stabilizers), vertices, edges,
                   data["radius"], data["stab_depth"])

    def __repr__(self):
        return f"ModelGraph({self.vertex_count} vertices, {self.edge_count} edges, R={self.radius}, L={self.stab_depth})"


def _word_to_dict(f: MappingClass) -> List[Dict]:
    return [{"curve": list(x.curve.coords), "name": x.name, "exponent": x.exponent} for x in f.letters]


def _word_from_dict(t: IdealTriangulation, letters: List[Dict]) -> MappingClass:
    return MappingClass(t, [Twist(NormalMultiCurve(x["curve"], t), x["exponent"], x.get("name")) for x in letters])


@dataclass
class _Move:
    generator: int
    length: int
    word: MappingClass
    image: Collection
    # z letters count their weight, stabilizer letters count one
    word_weight: int


def _moves(mu: Collection, Z: GeneratorSet, stab_depth: int) -> List[_Move]:
    stab_words = Z.stabilizer_words(stab_depth)
    moves = []
    seen = set()
    for gi, gen in enumerate(Z.generators, 1):
        for sign in (1, -1):
            z = gen.mapping_class ** sign
            for h in stab_words:
                word = h * z
                image = canonical_collection(apply_collection(word, mu))
                key = (gi, collection_key(image))
                if key in seen:
                    continue
                seen.add(key)
                moves.append(_Move(gi, gen.weight, word, image, gen.weight + h.length))
    return moves


def build_ball(mu: Sequence[NormalMultiCurve], Z: GeneratorSet, R: int, L: int,
               delta: Optional[SubsurfaceSpec] = None) -> ModelGraph:
    """Best-first search of the model ball of weighted radius R around mu.

    Args:
        mu: The base collection
        Z: Generators and stabilizer generators
        R: Weighted radius
        L: Stabilizer word depth
        delta: When given, the part of mu inside delta must fill it

    Returns:
        The ball as a ModelGraph; identical inputs give identical graphs

    Raises:
        NotFilling: If the delta part of mu does not fill delta
        EmptyGeneratorSet: If Z has no generators
    """
    t = Z.triangulation
    for curve in mu:
        if curve.triangulation_id != t.identifier:
            raise TriangulationMismatch("base collection and generators live on different triangulations")
    base = canonical_collection(mu)
    if delta is not None:
        boundary = {c.coords for c in component_curves(delta.boundary)}
        inner = [c for c in base if c.coords not in boundary]
        if not delta.fills_with(inner):
            raise NotFilling(f"base collection does not fill {delta!r}")

    moves = _moves(base, Z, L)
    logger.debug(f"{len(moves)} distinct moves at stabilizer depth {L}")
    identity = MappingClass.identity(t)
    base_key = collection_key(base)
    found: Dict[Tuple, Tuple[int, str, MappingClass, int, Collection]] = {
        base_key: (0, collection_digest(base), identity, 0, base)
    }
    heap = [(0, collection_digest(base), base_key)]
    settled: Dict[Tuple, Tuple[int, str, MappingClass, int, Collection]] = {}
    proposals: List[Tuple[Tuple, Tuple, int, int]] = []
    while heap:
        dist, digest, key = heapq.heappop(heap)
        if key in settled:
            continue
        settled[key] = found[key]
        _, _, word, weight, _ = found[key]
        for move in moves:
            curves = canonical_collection(apply_collection(word, move.image))
            target = collection_key(curves)
            if target == key:
                continue
            proposals.append((key, target, move.length, move.generator))
            nd = dist + move.length
            if nd > R or target in settled:
                continue
            if target not in found or nd < found[target][0]:
                tdigest = collection_digest(curves)
                found[target] = (nd, tdigest, word * move.word, weight + move.word_weight, curves)
                heapq.heappush(heap, (nd, tdigest, target))
        if len(settled) % 200 == 0:
            logger.debug(f"Settled {len(settled)} vertices, frontier {len(heap)}")

    ordered = sorted(settled.items(), key=lambda item: (item[1][0], item[1][1]))
    index = {key: i for i, (key, _) in enumerate(ordered)}
    vertices = [
        Vertex(i, curves, word, weight, dist)
        for i, (_, (dist, _, word, weight, curves)) in enumerate(ordered)
    ]
    best: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for source, target, length, generator in proposals:
        if target not in index:
            continue
        a, b = sorted((index[source], index[target]))
        if (a, b) not in best or (length, generator) < best[(a, b)]:
            best[(a, b)] = (length, generator)
    edges = [Edge(a, b, length, gen) for (a, b), (length, gen) in sorted(best.items())]
    model = ModelGraph(t, base, Z, vertices, edges, R, L)
    logger.info(f"Built {model!r}")
    return model


def saturation_report(mu: Sequence[NormalMultiCurve], Z: GeneratorSet, R: int, L: int) -> Dict:
    """Compare the balls at stabilizer depth L and L + 1."""
    lower = build_ball(mu, Z, R, L)
    upper = build_ball(mu, Z, R, L + 1)
    same_vertices = {v.digest for v in lower.vertices} == {v.digest for v in upper.vertices}
    contained = lower.edge_keys() <= upper.edge_keys()
    if not contained:
        logger.warning(f"Edges at depth {L} are not contained in depth {L + 1}")
    return {
        "radius": R,
        "depth": L,
        "vertices": lower.vertex_count,
        "edges": lower.edge_count,
        "next_vertices": upper.vertex_count,
        "next_edges": upper.edge_count,
        "same_vertices": same_vertices,
        "edges_contained": contained,
        "saturated": same_vertices and lower.edge_count == upper.edge_count,
    }


def golden_record(m: ModelGraph) -> Dict:
    """Digest-free record of a ball: vertices by key with distance, edges by end keys."""
    def key(v: Vertex) -> List[List[int]]:
        return [list(c) for c in v.key]

    vertices = sorted(({"key": key(v), "distance": v.distance} for v in m.vertices), key=lambda r: r["key"])
    edges = []
    for e in m.edges:
        ends = sorted((key(m.vertices[e.source]), key(m.vertices[e.target])))
        edges.append({"ends": ends, "length": e.length, "generator": e.generator})
    edges.sort(key=lambda r: r["ends"])
    return {"radius": m.radius, "stab_depth": m.stab_depth, "vertices": vertices, "edges": edges}


def orbit_by_words(mu: Sequence[NormalMultiCurve], Z: GeneratorSet, R: int, L: int) -> Dict[Tuple, int]:
    """Brute-force orbit ball: every g(mu) for g = h_1 z_1 ... h_k z_k with sum of weights <= R.

    Each h_i ranges over stabilizer words of length at most L and each z_i
    over the generators and their inverses. Words are grown on the left, so a
    collection is expanded once per remaining budget.

    Returns:
        Map canonical collection key -> least weighted word length reaching it
    """
    base = canonical_collection(mu)
    stab_words = Z.stabilizer_words(L)
    letters = [(gen.weight, gen.mapping_class ** sign) for gen in Z.generators for sign in (1, -1)]
    best: Dict[Tuple, int] = {collection_key(base): 0}
    frontier: List[Tuple[int, Collection]] = [(0, base)]
    while frontier:
        nxt = []
        for used, curves in frontier:
            for weight, z in letters:
                total = used + weight
                if total > R:
                    continue
                for h in stab_words:
                    image = canonical_collection(apply_collection(h * z, curves))
                    key = collection_key(image)
                    if key not in best or total < best[key]:
                        best[key] = total
                        nxt.append((total, image))
        frontier = nxt
    logger.debug(f"Word enumeration reached {len(best)} collections within {R}")
    return best
