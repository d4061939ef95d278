"""
Explicit realizations of curve systems on a triangulation.

An EmbeddedSystem places every strand of one or more multicurves as chords
in the triangles, with an explicit order of the points on each edge. Chord
``(i, k)`` of strand ``i`` lies in the triangle of ``walk[k]``: it enters
through point ``k - 1`` and leaves through point ``k``.

Points on an edge are listed left to right as seen when exiting through
side ``e``; index 0 is nearest the head of ``e``.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from arcmodel.core.curves import LEFT, NormalMultiCurve, Walk, reverse_walk, turn
from arcmodel.core.surface import IdealTriangulation, edge_of
from arcmodel.errors import TriangulationMismatch

logger = logging.getLogger(__name__)

Point = Tuple[int, int]            # (strand index, step k)
Chord = Tuple[int, int]            # (strand index, step k)
CirclePos = Tuple[int, int]        # (side position in triangle, position from tail)


@dataclass(frozen=True)
class Strand:
    """One embedded copy of a curve component."""
    walk: Walk
    tag: int
    component: int
    copy: int


def compare_exits(t: IdealTriangulation, w1: Walk, k1: int, w2: Walk, k2: int) -> int:
    """Order two strands leaving through the same side, in minimal position.

    Returns -1 when (w1, k1) lies to the left, 1 when it lies to the right and
    0 when the two backward rays never separate (parallel copies).
    """
    l1, l2 = len(w1), len(w2)
    for step in range(1, l1 + l2 + 1):
        if w1[(k1 - step) % l1] != w2[(k2 - step) % l2]:
            return -1 if turn(t, w1, k1 - step + 1) == LEFT else 1
    return 0


class EmbeddedSystem:
    """Strands realized as chords with explicit edge orders and crossings."""

    def __init__(self, triangulation: IdealTriangulation, strands: Sequence[Strand],
                 orders: Dict[int, List[Point]], crossings: Optional[Set[Tuple[Chord, Chord]]] = None):
        self.triangulation = triangulation
        self.strands = tuple(strands)
        self.orders = {e: list(orders.get(e, [])) for e in range(triangulation.edge_count)}
        self._index_points()
        self.crossings = crossings if crossings is not None else self._compute_crossings()

    # -- geometry of points and chords ------------------------------------

    def _index_points(self) -> None:
        self.position: Dict[Point, int] = {}
        for e, points in self.orders.items():
            for idx, point in enumerate(points):
                self.position[point] = idx

    def exit_side(self, point: Point) -> int:
        strand, k = point
        walk = self.strands[strand].walk
        return walk[k % len(walk)]

    def from_tail(self, side: int, point: Point) -> int:
        """Position of a point counted from the tail of ``side``."""
        idx = self.position[point]
        if side >= 0:
            return len(self.orders[side]) - 1 - idx
        return idx

    def chord_triangle(self, chord: Chord) -> int:
        return self.triangulation.side_index[self.exit_side(chord)][0]

    def chord_ends(self, chord: Chord) -> Tuple[CirclePos, CirclePos]:
        """Circle positions (entry, exit) of a chord inside its triangle."""
        strand, k = chord
        walk = self.strands[strand].walk
        n = len(walk)
        out_side = walk[k % n]
        in_side = ~walk[(k - 1) % n]
        entry = (strand, (k - 1) % n)
        exit_ = (strand, k % n)
        t = self.triangulation
        return (
            (t.side_index[in_side][1], self.from_tail(in_side, entry)),
            (t.side_index[out_side][1], self.from_tail(out_side, exit_)),
        )

    def chords(self) -> Iterable[Chord]:
        for i, strand in enumerate(self.strands):
            for k in range(len(strand.walk)):
                yield (i, k)

    def chords_by_triangle(self) -> Dict[int, List[Chord]]:
        grouped: Dict[int, List[Chord]] = {ti: [] for ti in range(self.triangulation.triangle_count)}
        for chord in self.chords():
            grouped[self.chord_triangle(chord)].append(chord)
        return grouped

    @staticmethod
    def _interleave(a: Tuple[CirclePos, CirclePos], b: Tuple[CirclePos, CirclePos]) -> bool:
        lo, hi = sorted(a)
        return (lo < b[0] < hi) != (lo < b[1] < hi)

    def _compute_crossings(self) -> Set[Tuple[Chord, Chord]]:
        crossings = set()
        for chords in self.chords_by_triangle().values():
            ends = [self.chord_ends(c) for c in chords]
            for i in range(len(chords)):
                for j in range(i + 1, len(chords)):
                    if self._interleave(ends[i], ends[j]):
                        crossings.add(_pair(chords[i], chords[j]))
        return crossings

    # -- summaries --------------------------------------------------------

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def crossings_between(self, tag_a: int, tag_b: int) -> int:
        count = 0
        for c1, c2 in self.crossings:
            tags = {self.strands[c1[0]].tag, self.strands[c2[0]].tag}
            if tags == {tag_a, tag_b}:
                count += 1
        return count

    def strands_with_tag(self, tag: int) -> List[int]:
        return [i for i, s in enumerate(self.strands) if s.tag == tag]

    def crossings_along(self) -> Dict[Chord, List[Chord]]:
        """For each chord, the chords it crosses ordered from its entry to its exit.

        Chord endpoints are placed in convex position on a parabola and the
        crossing parameters are compared exactly.
        """
        partners: Dict[Chord, List[Chord]] = {}
        for c1, c2 in self.crossings:
            partners.setdefault(c1, []).append(c2)
            partners.setdefault(c2, []).append(c1)
        coords_cache: Dict[int, Dict[CirclePos, Tuple[int, int]]] = {}
        ordered = {}
        for chord, others in partners.items():
            ti = self.chord_triangle(chord)
            if ti not in coords_cache:
                coords_cache[ti] = self._convex_points(ti)
            place = coords_cache[ti]
            p, q = (place[end] for end in self.chord_ends(chord))
            params = []
            for other in others:
                r, s = (place[end] for end in self.chord_ends(other))
                params.append((_crossing_parameter(p, q, r, s), other))
            params.sort()
            for (a, _), (b, other) in zip(params, params[1:]):
                if a == b:
                    logger.warning(f"Concurrent chords at {chord} and {other}; ordering by chord id")
            ordered[chord] = [other for _, other in params]
        return ordered

    def _convex_points(self, ti: int) -> Dict[CirclePos, Tuple[int, int]]:
        tri = self.triangulation.triangles[ti]
        place = {}
        q = 0
        for pos, side in enumerate(tri):
            for from_tail in range(len(self.orders[edge_of(side)])):
                x = 2 ** q
                place[(pos, from_tail)] = (x, x * x)
                q += 1
        return place

    def __repr__(self):
        return f"EmbeddedSystem({len(self.strands)} strands, {self.crossing_count} crossings)"


def _pair(c1: Chord, c2: Chord) -> Tuple[Chord, Chord]:
    return (c1, c2) if c1 <= c2 else (c2, c1)


def _crossing_parameter(p, q, r, s) -> Fraction:
    """Parameter along p->q of its intersection with segment r->s."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    ex, ey = s[0] - r[0], s[1] - r[1]
    denom = dx * ey - dy * ex
    return Fraction((r[0] - p[0]) * ey - (r[1] - p[1]) * ex, denom)


# -- building systems ------------------------------------------------------

def _strands_of(tagged: Sequence[Tuple[int, NormalMultiCurve]]) -> List[Strand]:
    strands = []
    for tag, curve in tagged:
        for comp, (walk, mult) in enumerate(curve.components):
            for copy in range(mult):
                strands.append(Strand(walk, tag, comp, copy))
    return strands


def _edge_points(t: IdealTriangulation, strands: Sequence[Strand]):
    """Group points by edge as (point, normalized walk, normalized index, reversed)."""
    by_edge = {e: [] for e in range(t.edge_count)}
    for i, strand in enumerate(strands):
        walk = strand.walk
        n = len(walk)
        rev = reverse_walk(walk)
        for k, side in enumerate(walk):
            if side >= 0:
                by_edge[side].append(((i, k), walk, k, False))
            else:
                by_edge[~side].append(((i, k), rev, n - 1 - k, True))
    return by_edge


def _minimal_order(t: IdealTriangulation, strands: Sequence[Strand], entries) -> List[Point]:
    def tie_key(entry):
        s = strands[entry[0][0]]
        return (s.tag, s.component, s.copy)

    def cmp(x, y):
        result = compare_exits(t, x[1], x[2], y[1], y[2])
        if result:
            return result
        kx, ky = tie_key(x), tie_key(y)
        if kx == ky:
            return 0
        forward = -1 if kx < ky else 1
        return -forward if x[3] else forward

    return [entry[0] for entry in sorted(entries, key=cmp_to_key(cmp))]


def realize_collection(t: IdealTriangulation, tagged: Sequence[Tuple[int, NormalMultiCurve]]) -> EmbeddedSystem:
    """Realize several multicurves jointly in minimal position."""
    for _, curve in tagged:
        if curve.triangulation_id != t.identifier:
            raise TriangulationMismatch(f"curve lives on {curve.triangulation_id}, expected {t.identifier}")
    strands = _strands_of(tagged)
    by_edge = _edge_points(t, strands)
    orders = {e: _minimal_order(t, strands, entries) for e, entries in by_edge.items()}
    return EmbeddedSystem(t, strands, orders)


def realize(u: NormalMultiCurve) -> EmbeddedSystem:
    """Canonical crossing-free realization of a multicurve."""
    return realize_collection(u.triangulation, [(0, u)])


def overlay(u: NormalMultiCurve, v: NormalMultiCurve) -> EmbeddedSystem:
    """Union of the realizations of u and v without any joint optimization.

    On every edge the strands of u sit nearer the tail than the strands of v;
    within each curve the parallel nesting of ``realize`` is kept.
    """
    u.require_same_triangulation(v)
    t = u.triangulation
    strands = _strands_of([(0, u), (1, v)])
    by_edge = _edge_points(t, strands)
    orders = {}
    for e, entries in by_edge.items():
        ordered = []
        for tag in (1, 0):
            ordered.extend(_minimal_order(t, strands, [x for x in entries if strands[x[0][0]].tag == tag]))
        orders[e] = ordered
    return EmbeddedSystem(t, strands, orders)


@dataclass(frozen=True)
class Bigon:
    """Two crossings joined by arcs of two strands that cross the same edges.

    ``run`` lists, for every edge crossed between the corners, the edge and
    the points of the two strands on it.
    """
    corners: Tuple[Tuple[Chord, Chord], Tuple[Chord, Chord]]
    run: Tuple[Tuple[int, Point, Point], ...]

    def is_innermost(self, system: EmbeddedSystem) -> bool:
        """No other point lies between the two arcs on any edge of the run."""
        return all(abs(system.position[x] - system.position[y]) == 1 for _, x, y in self.run)


def _follow(system: EmbeddedSystem, crossing: Tuple[Chord, Chord], forward: bool) -> Optional[Bigon]:
    (i, a), (j, b) = crossing
    wi, wj = system.strands[i].walk, system.strands[j].walk
    li, lj = len(wi), len(wj)
    run = []
    for _ in range(li + lj):
        side = wi[a % li]
        if forward:
            other, y = wj[b % lj], (j, b % lj)
        else:
            other, y = ~wj[(b - 1) % lj], (j, (b - 1) % lj)
        if side != other:
            return None
        run.append((edge_of(side), (i, a % li), y))
        a, b = a + 1, (b + 1 if forward else b - 1)
        end = _pair((i, a % li), (j, b % lj))
        if end in system.crossings:
            return Bigon((crossing, end), tuple(run))
    return None


def find_bigons(system: EmbeddedSystem, crossings: Optional[Iterable[Tuple[Chord, Chord]]] = None) -> List[Bigon]:
    """Bigons starting at the given crossings (all crossings by default).

    From each crossing both strands are followed while they leave through the
    same sides; meeting again before they part closes a bigon.
    """
    found = []
    for crossing in sorted(system.crossings if crossings is None else crossings):
        for forward in (True, False):
            bigon = _follow(system, crossing, forward)
            if bigon is not None:
                found.append(bigon)
    return found


def reduce_bigons(s: EmbeddedSystem) -> EmbeddedSystem:
    """Remove innermost bigons until none is left.

    An innermost bigon has its two arcs adjacent on every edge it spans, so
    exchanging those points removes its two corners and changes no other
    crossing. By the bigon criterion the result is in minimal position.
    """
    t = s.triangulation
    orders = {e: list(points) for e, points in s.orders.items()}
    work = EmbeddedSystem(t, s.strands, orders, set(s.crossings))
    by_triangle = work.chords_by_triangle()
    partners: Dict[Chord, Set[Chord]] = {}
    for c1, c2 in work.crossings:
        partners.setdefault(c1, set()).add(c2)
        partners.setdefault(c2, set()).add(c1)
    removed = 0
    progress = True
    while progress:
        progress = False
        for crossing in sorted(work.crossings):
            if crossing not in work.crossings:
                continue
            for bigon in find_bigons(work, [crossing]):
                if not bigon.is_innermost(work):
                    continue
                touched: Set[Chord] = set()
                for e, x, y in bigon.run:
                    order = work.orders[e]
                    px, py = work.position[x], work.position[y]
                    order[px], order[py] = y, x
                    work.position[x], work.position[y] = py, px
                    touched |= _chords_at(work, x) | _chords_at(work, y)
                _refresh(work, by_triangle, partners, touched)
                removed += 1
                progress = True
                break
    left = find_bigons(work)
    if left:
        logger.warning(f"{len(left)} bigons left without an innermost one")
    if removed:
        logger.debug(f"Bigon reduction: {removed} bigons, {s.crossing_count} -> {work.crossing_count} crossings")
    return work


def _chords_at(system: EmbeddedSystem, point: Point) -> Set[Chord]:
    strand, k = point
    n = len(system.strands[strand].walk)
    return {(strand, k % n), (strand, (k + 1) % n)}


def _refresh(system: EmbeddedSystem, by_triangle: Dict[int, List[Chord]],
             partners: Dict[Chord, Set[Chord]], chords: Set[Chord]) -> None:
    crossings = system.crossings
    for chord in chords:
        for other in partners.pop(chord, set()):
            partners.get(other, set()).discard(chord)
            crossings.discard(_pair(chord, other))
    for chord in chords:
        ends = system.chord_ends(chord)
        for other in by_triangle[system.chord_triangle(chord)]:
            if other != chord and system._interleave(ends, system.chord_ends(other)):
                crossings.add(_pair(chord, other))
                partners.setdefault(chord, set()).add(other)
                partners.setdefault(other, set()).add(chord)
