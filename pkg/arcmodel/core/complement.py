"""
Complementary regions of curve systems.

Two tools live here. ``ComplementaryRegions`` cuts the surface along a
crossing-free system and reports the topology of every region. The
boundary-cycle tracer follows the boundary of a regular neighbourhood of a
connected curve graph, which decides whether a collection of intersecting
curves fills.

Gaps are addressed as ``(side, k)``: gap k on a side lies between the
points at positions k - 1 and k counted from the tail of the side.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
from networkx.utils import UnionFind

from arcmodel.core.curves import (
    NormalMultiCurve,
    Walk,
    canonical_walk,
    cyclically_reduce,
    is_peripheral_walk,
)
from arcmodel.core.embedding import Chord, EmbeddedSystem, realize_collection
from arcmodel.core.surface import IdealTriangulation, edge_of

logger = logging.getLogger(__name__)

Gap = Tuple[int, int]

LEFT_SIDE = "L"
RIGHT_SIDE = "R"


@dataclass(frozen=True)
class RegionTopology:
    """Topological type of a complementary region."""
    genus: int
    boundary: int
    punctures: int
    euler_characteristic: int

    @property
    def is_annulus(self) -> bool:
        return self.genus == 0 and self.boundary + self.punctures == 2 and self.boundary >= 1

    @property
    def is_pants(self) -> bool:
        return self.genus == 0 and self.boundary + self.punctures == 3

    def to_dict(self) -> Dict:
        return {
            "genus": self.genus,
            "boundary": self.boundary,
            "punctures": self.punctures,
            "euler_characteristic": self.euler_characteristic,
        }


class ComplementaryRegions:
    """
    Regions of the complement of a crossing-free embedded system.

    Regions are numbered by their least gap in the order of edges, so the
    numbering only depends on the system.
    """

    def __init__(self, system: EmbeddedSystem):
        if system.crossings:
            raise ValueError("complementary regions need a crossing-free system")
        self.system = system
        t = system.triangulation
        self.triangulation = t
        self.counts = {e: len(system.orders[e]) for e in range(t.edge_count)}

        self._local = UnionFind()
        for tri in t.triangles:
            for i in range(3):
                s, nxt = tri[i], tri[(i + 1) % 3]
                self._local.union((s, self.n(s)), (nxt, 0))
            for side in tri:
                for k in range(self.n(side) + 1):
                    self._local[(side, k)]
        for chord in system.chords():
            (p_side, p), (q_side, q) = self._chord_gaps(chord)
            self._local.union((p_side, p), (q_side, q + 1))
            self._local.union((p_side, p + 1), (q_side, q))

        self._global = UnionFind()
        for gap in list(self._local.parents):
            self._global.union(gap, self._local[gap])
        for e in range(t.edge_count):
            n = self.n(e)
            for k in range(n + 1):
                self._global.union((e, k), (~e, n - k))

        roots = {}
        for e in range(t.edge_count):
            for k in range(self.n(e) + 1):
                root = self._global[(e, k)]
                if root not in roots:
                    roots[root] = len(roots)
        self._region_of_root = roots
        self.topology = self._compute_topology()
        logger.debug(f"Complement of {len(system.strands)} strands has {len(roots)} regions")

    def n(self, side: int) -> int:
        return self.counts[edge_of(side)]

    def _chord_gaps(self, chord: Chord) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        strand, k = chord
        walk = self.system.strands[strand].walk
        n = len(walk)
        in_side, out_side = ~walk[(k - 1) % n], walk[k % n]
        p = self.system.from_tail(in_side, (strand, (k - 1) % n))
        q = self.system.from_tail(out_side, (strand, k % n))
        return (in_side, p), (out_side, q)

    # -- lookups ----------------------------------------------------------

    @property
    def count(self) -> int:
        return len(self._region_of_root)

    def region_of_gap(self, gap: Gap) -> int:
        return self._region_of_root[self._global[gap]]

    def side_gaps(self, strand: int) -> Dict[str, Gap]:
        return strand_side_gaps(self.system, strand)

    def side_regions(self, strand: int) -> Dict[str, int]:
        return {k: self.region_of_gap(g) for k, g in self.side_gaps(strand).items()}

    def _compute_topology(self) -> List[RegionTopology]:
        t = self.triangulation
        count = self.count
        pieces: List[Set] = [set() for _ in range(count)]
        intervals = [0] * count
        vertices: List[Set[int]] = [set() for _ in range(count)]
        boundary = [0] * count
        for tri in t.triangles:
            for side in tri:
                for k in range(self.n(side) + 1):
                    pieces[self.region_of_gap((side, k))].add(self._local[(side, k)])
                vertices[self.region_of_gap((side, self.n(side)))].add(t.head(side))
        for e in range(t.edge_count):
            for k in range(self.n(e) + 1):
                intervals[self.region_of_gap((e, k))] += 1
        for strand in range(len(self.system.strands)):
            for region in self.side_regions(strand).values():
                boundary[region] += 1
        result = []
        for r in range(count):
            chi = len(pieces[r]) - intervals[r]
            p, b = len(vertices[r]), boundary[r]
            genus = (2 - chi - p - b) // 2
            result.append(RegionTopology(genus, b, p, chi))
        return result


# -- boundary cycles of curve graphs --------------------------------------

def _strand_events(system: EmbeddedSystem, along: Dict[Chord, List[Chord]]):
    """Per strand, the crossings met in order as (k, crossing key, own chord)."""
    events = {i: [] for i in range(len(system.strands))}
    for i, strand in enumerate(system.strands):
        for k in range(len(strand.walk)):
            chord = (i, k)
            for other in along.get(chord, []):
                key = (chord, other) if chord <= other else (other, chord)
                events[i].append((k, key, chord))
    return events


def boundary_cycles(system: EmbeddedSystem) -> List[Walk]:
    """Reduced side walks of the boundary cycles of a neighbourhood of the curve graph.

    Only strands that meet at least one crossing take part; the caller
    checks connectivity separately.
    """
    along = system.crossings_along()
    events = _strand_events(system, along)
    index: Dict[Tuple[Tuple[Chord, Chord], Chord], Tuple[int, int]] = {}
    for i, evs in events.items():
        for pos, (_, key, chord) in enumerate(evs):
            index[(key, chord)] = (i, pos)

    def ends(chord):
        return system.chord_ends(chord)

    def rotation(key):
        u, v = key
        ua, ub = ends(u)
        va, _ = ends(v)
        lo, hi = ua, ub
        in_arc = (lo < va < hi) if lo < hi else (va > lo or va < hi)
        if in_arc:
            return [(u, 1), (v, 1), (u, -1), (v, -1)]
        return [(u, 1), (v, -1), (u, -1), (v, 1)]

    def travel(strand, pos, direction):
        evs = events[strand]
        walk = system.strands[strand].walk
        n = len(walk)
        k_cur = evs[pos][0]
        nxt = (pos + direction) % len(evs)
        k_next = evs[nxt][0]
        if direction > 0:
            steps = (k_next - k_cur) % n
            if steps == 0 and nxt <= pos:
                steps = n
            sides = [walk[(k_cur + s) % n] for s in range(steps)]
        else:
            steps = (k_cur - k_next) % n
            if steps == 0 and nxt >= pos:
                steps = n
            sides = [~walk[(k_cur - 1 - s) % n] for s in range(steps)]
        return nxt, sides

    unused: Set[Tuple[Tuple[Chord, Chord], Chord, int]] = set()
    for key in {k for evs in events.values() for _, k, _ in evs}:
        for chord in key:
            for d in (1, -1):
                unused.add((key, chord, d))

    cycles = []
    for start in sorted(unused):
        if start not in unused:
            continue
        sides: List[int] = []
        current = start
        while current in unused:
            unused.discard(current)
            key, chord, d = current
            strand, pos = index[(key, chord)]
            nxt, crossed = travel(strand, pos, d)
            sides.extend(crossed)
            _, next_key, next_chord = events[strand][nxt]
            arriving = (next_chord, -d)
            rot = rotation(next_key)
            out_chord, out_dir = rot[(rot.index(arriving) - 1) % 4]
            current = (next_key, out_chord, out_dir)
        cycles.append(cyclically_reduce(sides))
    return cycles


def curve_graph_connected(system: EmbeddedSystem) -> bool:
    graph = nx.Graph()
    graph.add_nodes_from(range(len(system.strands)))
    for c1, c2 in system.crossings:
        graph.add_edge(c1[0], c2[0])
    return len(system.strands) > 0 and nx.is_connected(graph)


def fills(curves: Sequence[NormalMultiCurve], t: IdealTriangulation,
          allowed: Iterable[Walk] = ()) -> bool:
    """Whether the distinct components of ``curves`` fill, up to the allowed boundary walks.

    Args:
        curves: The curve collection
        t: The triangulation the curves live on
        allowed: Canonical walks of boundary curves that complementary regions may be parallel to

    Returns:
        True when the curve graph is connected and every boundary cycle is
        trivial, peripheral or parallel to an allowed curve
    """
    seen = {}
    for curve in curves:
        for walk, _ in curve.components:
            seen.setdefault(walk, None)
    if not seen:
        return False
    pieces = [NormalMultiCurve.from_walk(t, walk) for walk in seen]
    system = realize_collection(t, [(i, c) for i, c in enumerate(pieces)])
    if not system.crossings or not curve_graph_connected(system):
        return False
    allowed = {canonical_walk(w) for w in allowed}
    for cycle in boundary_cycles(system):
        if not cycle or is_peripheral_walk(t, cycle):
            continue
        if canonical_walk(cycle) in allowed:
            continue
        logger.debug(f"Essential complementary boundary {cycle}")
        return False
    return True


def is_filling(u, t: Optional[IdealTriangulation] = None) -> bool:
    """Whether a multicurve (or a collection of multicurves) fills the surface."""
    curves = [u] if isinstance(u, NormalMultiCurve) else list(u)
    if not curves:
        return False
    t = t or curves[0].triangulation
    return fills(curves, t)


def strand_side_gaps(system: EmbeddedSystem, strand: int, k: int = 0) -> Dict[str, Gap]:
    """The gaps immediately left and right of a strand at its k-th point."""
    walk = system.strands[strand].walk
    side = walk[k % len(walk)]
    p = system.from_tail(side, (strand, k % len(walk)))
    return {LEFT_SIDE: (side, p + 1), RIGHT_SIDE: (side, p)}


def restrict_gap(system: EmbeddedSystem, gap: Gap, keep: Set[int]) -> Gap:
    """Translate a gap to the sub-system made of the strands in ``keep``."""
    side, k = gap
    points = system.orders[edge_of(side)]
    ordered = list(reversed(points)) if side >= 0 else points
    kept = sum(1 for point in ordered[:k] if point[0] in keep)
    return (side, kept)
