"""
Subsurfaces and subsurface projection.

A SubsurfaceSpec is a boundary multicurve together with a choice of
complementary regions. Projection cuts a collection along the boundary in
minimal position and keeps the essential arcs and curves inside the chosen
regions.

Arcs are recorded as paths of edge intervals between boundary circles.
A boundary circle is a pair (strand, side) of the boundary realization; the
intervals it crosses are the gaps just beside that strand on that side.
"""

import hashlib
import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from arcmodel.core.complement import (
    LEFT_SIDE,
    RIGHT_SIDE,
    ComplementaryRegions,
    RegionTopology,
    fills,
    restrict_gap,
    strand_side_gaps,
)
from arcmodel.core.curves import (
    NormalMultiCurve,
    Walk,
    canonical_walk,
    cyclically_reduce,
    is_peripheral_walk,
    walk_coordinates,
)
from arcmodel.core.embedding import realize, realize_collection
from arcmodel.core.intersection import intersection_number, walk_self_intersection
from arcmodel.core.surface import IdealTriangulation, edge_of
from arcmodel.errors import InvalidSubsurface, NotInProjectionDomain, TriangulationMismatch

logger = logging.getLogger(__name__)

Interval = Tuple[int, int, int]           # (edge, gap on the edge, direction)
Circle = Tuple[int, str]                  # (boundary strand, side)
Arc = Tuple[Circle, int, Tuple[Interval, ...], Circle, int]


def _reverse_interval(interval: Interval) -> Interval:
    e, g, d = interval
    return (e, g, -d)


def _interval_side(interval: Interval) -> int:
    e, _, d = interval
    return e if d > 0 else ~e


class SubsurfaceSpec:
    """
    A compact essential subsurface W given by its boundary and side selection.

    Args:
        boundary: The boundary multicurve; every component with multiplicity one
        regions: Indices of the complementary regions of the boundary making up W
        name: Optional display name
    """

    def __init__(self, boundary: NormalMultiCurve, regions: Iterable[int], name: Optional[str] = None):
        self.boundary = boundary
        self.regions = tuple(sorted(set(regions)))
        self.name = name
        self.triangulation = boundary.triangulation
        self.system = realize(boundary)
        self.complement = ComplementaryRegions(self.system)
        self._footprints: Dict[Tuple[int, ...], FrozenSet[int]] = {}
        self._validate()

    # -- construction -----------------------------------------------------

    @classmethod
    def whole_surface(cls, t: IdealTriangulation, name: Optional[str] = None) -> "SubsurfaceSpec":
        return cls(NormalMultiCurve.empty(t), [0], name)

    @classmethod
    def containing(cls, boundary: NormalMultiCurve, curve: NormalMultiCurve,
                   name: Optional[str] = None) -> "SubsurfaceSpec":
        """The complementary region of ``boundary`` that contains ``curve``.

        Raises:
            InvalidSubsurface: If the curve crosses the boundary or is parallel to it
        """
        if intersection_number(boundary, curve):
            raise InvalidSubsurface("the side curve crosses the boundary")
        joint = realize_collection(boundary.triangulation, [(0, boundary), (1, curve)])
        keep = set(joint.strands_with_tag(0))
        marker = joint.strands_with_tag(1)[0]
        complement = ComplementaryRegions(realize(boundary))
        gap = restrict_gap(joint, strand_side_gaps(joint, marker)[LEFT_SIDE], keep)
        return cls(boundary, [complement.region_of_gap(gap)], name)

    def _validate(self) -> None:
        t = self.triangulation
        for walk, mult in self.boundary.components:
            if mult != 1:
                raise InvalidSubsurface("boundary components must have multiplicity one")
            if is_peripheral_walk(t, walk):
                raise InvalidSubsurface("boundary components must be essential")
        if not self.regions:
            raise InvalidSubsurface("empty side selection")
        for r in self.regions:
            if r < 0 or r >= self.complement.count:
                raise InvalidSubsurface(f"region {r} does not exist")
            topo = self.complement.topology[r]
            if topo.is_annulus:
                raise InvalidSubsurface(f"region {r} is an annulus")
            if topo.is_pants:
                raise InvalidSubsurface(f"region {r} is a pair of pants")
            if topo.euler_characteristic >= 0:
                raise InvalidSubsurface(f"region {r} has chi >= 0")
        for strand in range(len(self.system.strands)):
            sides = self.complement.side_regions(strand)
            inside = [r for r in sides.values() if r in self.regions]
            if not inside:
                raise InvalidSubsurface(f"boundary component {strand} does not bound W")
            if len(inside) == 2 and sides[LEFT_SIDE] != sides[RIGHT_SIDE]:
                raise InvalidSubsurface(f"boundary component {strand} separates two parts of W")

    # -- topology ---------------------------------------------------------

    @property
    def is_connected(self) -> bool:
        return len(self.regions) == 1

    @property
    def topology(self) -> List[RegionTopology]:
        return [self.complement.topology[r] for r in self.regions]

    @property
    def euler_characteristic(self) -> int:
        return sum(t.euler_characteristic for t in self.topology)

    @property
    def genus(self) -> int:
        return sum(t.genus for t in self.topology)

    @property
    def is_whole_surface(self) -> bool:
        return self.boundary.is_empty

    def is_farey_type(self) -> bool:
        """Connected with complexity one: a one-holed torus or a four-holed sphere."""
        if not self.is_connected:
            return False
        topo = self.topology[0]
        holes = topo.boundary + topo.punctures
        return (topo.genus, holes) in ((1, 1), (0, 4))

    def circles(self) -> List[Circle]:
        """Boundary circles of W as (strand, side) pairs."""
        result = []
        for strand in range(len(self.system.strands)):
            for side, region in sorted(self.complement.side_regions(strand).items()):
                if region in self.regions:
                    result.append((strand, side))
        return result

    def circle_walk(self, circle: Circle) -> Walk:
        return self.system.strands[circle[0]].walk

    @cached_property
    def boundary_walks(self) -> List[Walk]:
        return [canonical_walk(s.walk) for s in self.system.strands]

    def components(self) -> List["SubsurfaceSpec"]:
        """Connected components of W, each with its own boundary."""
        if self.is_connected:
            return [self]
        result = []
        t = self.triangulation
        for r in self.regions:
            strands = [s for s in range(len(self.system.strands))
                       if r in self.complement.side_regions(s).values()]
            walks = [self.system.strands[s].walk for s in strands]
            coords = [0] * t.edge_count
            for walk in walks:
                for e, c in enumerate(walk_coordinates(walk, t.edge_count)):
                    coords[e] += c
            sub_boundary = NormalMultiCurve(tuple(coords), t)
            sub_system = realize(sub_boundary)
            sub_complement = ComplementaryRegions(sub_system)
            gap = self._region_gap(r)
            sub_gap = restrict_gap(self.system, gap, set(strands))
            name = f"{self.name}[{r}]" if self.name else None
            result.append(SubsurfaceSpec(sub_boundary, [sub_complement.region_of_gap(sub_gap)], name))
        return result

    def _region_gap(self, region: int):
        for e in range(self.triangulation.edge_count):
            for k in range(self.complement.n(e) + 1):
                if self.complement.region_of_gap((e, k)) == region:
                    return (e, k)
        raise InvalidSubsurface(f"region {region} has no gap")

    # -- identity ---------------------------------------------------------

    @cached_property
    def key(self) -> str:
        payload = json.dumps({
            "triangulation": self.triangulation.identifier,
            "boundary": list(self.boundary.coords),
            "regions": list(self.regions),
        })
        return hashlib.sha1(payload.encode("utf-8")).hexdigest()[:16]

    def __eq__(self, other):
        return isinstance(other, SubsurfaceSpec) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        label = self.name or self.key
        shapes = ", ".join(f"S_{t.genus},{t.punctures}^{t.boundary}" for t in self.topology)
        return f"SubsurfaceSpec({label}: {shapes})"

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "boundary": list(self.boundary.coords),
            "regions": list(self.regions),
            "components": [t.to_dict() for t in self.topology],
        }

    # -- position of curves -----------------------------------------------

    def footprint(self, x: NormalMultiCurve) -> FrozenSet[int]:
        """Regions of W met essentially by a multicurve."""
        if x.triangulation_id != self.triangulation.identifier:
            raise TriangulationMismatch("curve and subsurface live on different triangulations")
        if x.coords in self._footprints:
            return self._footprints[x.coords]
        met: Set[int] = set()
        if x.is_empty:
            self._footprints[x.coords] = frozenset()
            return frozenset()
        joint = realize_collection(self.triangulation, [(0, self.boundary), (1, x)])
        keep = set(joint.strands_with_tag(0))
        crossed: Dict[int, Set[int]] = {}
        for c1, c2 in joint.crossings:
            a, b = c1[0], c2[0]
            if a in keep and b not in keep:
                crossed.setdefault(b, set()).add(a)
            elif b in keep and a not in keep:
                crossed.setdefault(a, set()).add(b)
        for strand in joint.strands_with_tag(1):
            if strand in crossed:
                for a in crossed[strand]:
                    met.update(r for r in self.complement.side_regions(a).values() if r in self.regions)
                continue
            walk = joint.strands[strand].walk
            if is_peripheral_walk(self.triangulation, walk) or canonical_walk(walk) in self.boundary_walks:
                continue
            gap = restrict_gap(joint, strand_side_gaps(joint, strand)[LEFT_SIDE], keep)
            region = self.complement.region_of_gap(gap)
            if region in self.regions:
                met.add(region)
        result = frozenset(met)
        self._footprints[x.coords] = result
        return result

    def contains_curve(self, x: NormalMultiCurve) -> bool:
        """Whether every component of x lies inside W, non-peripheral and not boundary-parallel."""
        if intersection_number(x, self.boundary):
            return False
        return all(
            self.footprint(NormalMultiCurve.from_walk(self.triangulation, walk))
            for walk, _ in x.components
        )

    def fills_with(self, curves: Sequence[NormalMultiCurve]) -> bool:
        """Whether the curves lie in W and fill every component of W."""
        if not curves or not all(self.contains_curve(c) for c in curves):
            return False
        t = self.triangulation
        for component in self.components():
            members = [c for c in curves if component.footprint(c)]
            if not members or not fills(members, t, component.boundary_walks):
                return False
        return True


def essential_intersection_check(u: Sequence[NormalMultiCurve], W: SubsurfaceSpec) -> bool:
    """Whether the collection meets every component of W essentially.

    A component is met when some element crosses its boundary in minimal
    position or has a component inside it that is neither peripheral nor
    boundary-parallel.
    """
    curves = [u] if isinstance(u, NormalMultiCurve) else list(u)
    met: Set[int] = set()
    for x in curves:
        met |= W.footprint(x)
    return all(r in met for r in W.regions)


# -- relative position of subsurfaces ----------------------------------------

DISJOINT = "disjoint"
INSIDE = "inside"
CONTAINS = "contains"
EQUAL = "equal"
OVERLAPPING = "overlapping"


def relative_position(V: SubsurfaceSpec, W: SubsurfaceSpec) -> str:
    """Classify V against W: disjoint, inside, contains, equal or overlapping."""
    if V.triangulation.identifier != W.triangulation.identifier:
        raise TriangulationMismatch("subsurfaces live on different triangulations")
    if intersection_number(V.boundary, W.boundary):
        return OVERLAPPING
    t = V.triangulation
    joint = realize_collection(t, [(0, V.boundary), (1, W.boundary)])
    regions = ComplementaryRegions(joint)
    keep_v = set(joint.strands_with_tag(0))
    keep_w = set(joint.strands_with_tag(1))
    seen = set()
    in_v_not_w = in_w_not_v = in_both = False
    for e in range(t.edge_count):
        for k in range(regions.n(e) + 1):
            r = regions.region_of_gap((e, k))
            if r in seen:
                continue
            seen.add(r)
            topo = regions.topology[r]
            if topo.is_annulus and topo.punctures == 0:
                continue
            in_v = V.complement.region_of_gap(restrict_gap(joint, (e, k), keep_v)) in V.regions
            in_w = W.complement.region_of_gap(restrict_gap(joint, (e, k), keep_w)) in W.regions
            in_both |= in_v and in_w
            in_v_not_w |= in_v and not in_w
            in_w_not_v |= in_w and not in_v
    if not in_both:
        return DISJOINT
    if not in_v_not_w and not in_w_not_v:
        return EQUAL
    if not in_v_not_w:
        return INSIDE
    if not in_w_not_v:
        return CONTAINS
    return OVERLAPPING


def are_disjoint(V: SubsurfaceSpec, W: SubsurfaceSpec) -> bool:
    return relative_position(V, W) == DISJOINT


def contains(W: SubsurfaceSpec, V: SubsurfaceSpec) -> bool:
    """Whether V is a subsurface of W (up to isotopy)."""
    return relative_position(V, W) in (INSIDE, EQUAL)


# -- projection ---------------------------------------------------------------

@dataclass(frozen=True)
class ArcCurveSystemInSubsurface:
    """
    Canonical form of the projection of a collection to a subsurface.

    Curves are coordinate vectors on the ambient triangulation; arcs are
    canonical interval paths between boundary circles of W.
    """
    subsurface_key: str
    curves: Tuple[Tuple[int, ...], ...]
    arcs: Tuple[Arc, ...]
    subsurface: Optional[SubsurfaceSpec] = field(default=None, compare=False, repr=False)

    @property
    def is_empty(self) -> bool:
        return not self.curves and not self.arcs

    @cached_property
    def digest(self) -> str:
        return hashlib.sha1(json.dumps(self.to_dict(), sort_keys=True).encode("utf-8")).hexdigest()[:16]

    def to_dict(self) -> Dict:
        return {
            "subsurface": self.subsurface_key,
            "curves": [list(c) for c in self.curves],
            "arcs": [
                {
                    "start": [a[0][0], a[0][1], a[1]],
                    "path": [list(i) for i in a[2]],
                    "end": [a[3][0], a[3][1], a[4]],
                }
                for a in self.arcs
            ],
        }

    def shadows(self) -> List[NormalMultiCurve]:
        """Curves of the system together with the curve shadows of its arcs."""
        W = self.subsurface
        t = W.triangulation
        found = {c: NormalMultiCurve(c, t) for c in self.curves}
        for arc in self.arcs:
            for walk in _arc_shadow_walks(W, arc):
                curve = NormalMultiCurve.from_walk(t, walk)
                found.setdefault(curve.coords, curve)
        return [found[k] for k in sorted(found)]


class _CircleData:
    """Interval sequence crossed by the pushed-off copy of a boundary circle."""

    def __init__(self, W: SubsurfaceSpec, circle: Circle):
        strand, side = circle
        system = W.system
        walk = system.strands[strand].walk
        self.walk = walk
        self.length = len(walk)
        self.side = side
        self.intervals = []
        for k in range(self.length):
            gap = strand_side_gaps(system, strand, k)[side]
            self.intervals.append(_interval(W, gap))


def _interval(W: SubsurfaceSpec, gap) -> Interval:
    side, g = gap
    if side >= 0:
        return (side, g, 1)
    e = ~side
    return (e, W.complement.n(e) - g, -1)


def _circle_data(W: SubsurfaceSpec) -> Dict[Circle, _CircleData]:
    cache = W.__dict__.setdefault("_circle_cache", {})
    if not cache:
        for circle in W.circles():
            cache[circle] = _CircleData(W, circle)
    return cache


def _free_reduce(path: Sequence[Interval]) -> List[Interval]:
    stack: List[Interval] = []
    for interval in path:
        if stack and stack[-1] == _reverse_interval(interval):
            stack.pop()
        else:
            stack.append(interval)
    return stack


def _canonical_arc(W: SubsurfaceSpec, arc: Arc) -> Optional[Arc]:
    """Slide endpoints and reduce; None when the arc is boundary-parallel."""
    circles = _circle_data(W)
    ca, s, path, cb, t = arc
    A = _free_reduce(path)
    da, db = circles[ca], circles[cb]
    changed = True
    while changed and A:
        changed = False
        if A and A[0] == da.intervals[s]:
            A.pop(0)
            s = (s + 1) % da.length
            changed = True
        elif A and A[0] == _reverse_interval(da.intervals[(s - 1) % da.length]):
            A.pop(0)
            s = (s - 1) % da.length
            changed = True
        if A and A[-1] == db.intervals[(t - 1) % db.length]:
            A.pop()
            t = (t - 1) % db.length
            changed = True
        elif A and A[-1] == _reverse_interval(db.intervals[t]):
            A.pop()
            t = (t + 1) % db.length
            changed = True
    if not A:
        # Distinct chords of one circle in one piece bound a strip: essential.
        if ca == cb and s == t:
            return None
        s, t = _slide_empty(da, s, db, t)
        if ca == cb and s == t:
            return None
    return (ca, s, tuple(A), cb, t)


def _slide_empty(da: _CircleData, s: int, db: _CircleData, t: int) -> Tuple[int, int]:
    """Push an arc lying in one piece to the forward end of the run shared by both circles."""
    seen = [(s, t)]
    for _ in range(da.length + db.length):
        step = _reverse_interval(da.intervals[s])
        if step == db.intervals[(t - 1) % db.length]:
            s, t = (s + 1) % da.length, (t - 1) % db.length
        elif step == _reverse_interval(db.intervals[t]):
            s, t = (s + 1) % da.length, (t + 1) % db.length
        else:
            return s, t
        seen.append((s, t))
    return min(seen)


def canonical_arc(W: SubsurfaceSpec, arc: Arc) -> Optional[Arc]:
    """Canonical representative of an arc up to endpoint sliding and reversal."""
    forward = _canonical_arc(W, arc)
    if forward is None:
        return None
    ca, s, A, cb, t = forward
    backward = _canonical_arc(W, (cb, t, tuple(_reverse_interval(i) for i in reversed(A)), ca, s))
    return min(forward, backward)


def _side_after_crossing(joint, own_chord, other_chord) -> str:
    """Side of ``other_chord`` on which ``own_chord`` ends up after crossing it."""
    u_entry, _ = joint.chord_ends(own_chord)
    a, b = joint.chord_ends(other_chord)
    in_arc = (a < u_entry < b) if a < b else (u_entry > a or u_entry < b)
    # Starting right of the boundary chord means ending on its left.
    return LEFT_SIDE if in_arc else RIGHT_SIDE


def _opposite(side: str) -> str:
    return RIGHT_SIDE if side == LEFT_SIDE else LEFT_SIDE


def _cut_curve(W: SubsurfaceSpec, x: NormalMultiCurve):
    """Arcs and curves of a multicurve inside W."""
    t = W.triangulation
    joint = realize_collection(t, [(0, W.boundary), (1, x)])
    keep = set(joint.strands_with_tag(0))
    along = joint.crossings_along()
    region_sides = {a: W.complement.side_regions(a) for a in keep}
    arcs: Set[Arc] = set()
    curves: Set[Tuple[int, ...]] = set()
    for strand in joint.strands_with_tag(1):
        if joint.strands[strand].copy:
            continue
        walk = joint.strands[strand].walk
        n = len(walk)
        events = []
        for k in range(n):
            for other in along.get((strand, k), []):
                side_after = _side_after_crossing(joint, (strand, k), other)
                events.append(("cross", other, side_after))
            gap = strand_side_gaps(joint, strand, k)[LEFT_SIDE]
            events.append(("gap", restrict_gap(joint, (walk[k], gap[1] - 1), keep)))
        crossings = [i for i, ev in enumerate(events) if ev[0] == "cross"]
        if not crossings:
            if is_peripheral_walk(t, walk) or canonical_walk(walk) in W.boundary_walks:
                continue
            gap = restrict_gap(joint, strand_side_gaps(joint, strand)[LEFT_SIDE], keep)
            if W.complement.region_of_gap(gap) in W.regions:
                curves.add(walk_coordinates(walk, t.edge_count))
            continue
        for idx, start in enumerate(crossings):
            end = crossings[(idx + 1) % len(crossings)]
            _, (a, ka), side_a = events[start]
            if region_sides[a][side_a] not in W.regions:
                continue
            _, (b, kb), side_b_after = events[end]
            side_b = _opposite(side_b_after)
            path = []
            j = (start + 1) % len(events)
            while j != end:
                if events[j][0] == "gap":
                    path.append(_interval(W, events[j][1]))
                j = (j + 1) % len(events)
            arc = canonical_arc(W, ((a, side_a), ka, tuple(path), (b, side_b), kb))
            if arc is not None:
                arcs.add(arc)
    return arcs, curves


def subsurface_cut(u: Sequence[NormalMultiCurve], W: SubsurfaceSpec) -> ArcCurveSystemInSubsurface:
    """Project a collection to W.

    Args:
        u: A NormalMultiCurve or a collection of them
        W: The subsurface

    Returns:
        The canonical arcs and curves of u inside W

    Raises:
        NotInProjectionDomain: If u does not meet every component of W essentially
    """
    curves_in = [u] if isinstance(u, NormalMultiCurve) else list(u)
    if not essential_intersection_check(curves_in, W):
        raise NotInProjectionDomain(f"collection misses a component of {W!r}")
    arcs: Set[Arc] = set()
    curves: Set[Tuple[int, ...]] = set()
    for x in curves_in:
        if not W.footprint(x):
            continue
        xa, xc = _cut_curve(W, x)
        arcs |= xa
        curves |= xc
    return ArcCurveSystemInSubsurface(W.key, tuple(sorted(curves)), tuple(sorted(arcs)), W)


# -- shadows --------------------------------------------------------------------

def _loop(walk: Walk, start: int, forward: bool, steps: Optional[int] = None) -> List[int]:
    n = len(walk)
    steps = n if steps is None else steps
    if forward:
        return [walk[(start + i) % n] for i in range(steps)]
    return [~walk[(start - 1 - i) % n] for i in range(steps)]


def _simple(t: IdealTriangulation, walk: Walk) -> bool:
    return bool(walk) and not is_peripheral_walk(t, walk) and walk_self_intersection(t, walk) == 0


def _arc_shadow_walks(W: SubsurfaceSpec, arc: Arc) -> List[Walk]:
    """Reduced walks of the essential boundary curves of a neighbourhood of arc and boundary."""
    t = W.triangulation
    ca, s, A, cb, tt = arc
    sides = [_interval_side(i) for i in A]
    back = [~x for x in reversed(sides)]
    wa, wb = W.circle_walk(ca), W.circle_walk(cb)
    results = []
    if ca != cb:
        fa, fb = ca[1] == LEFT_SIDE, cb[1] == LEFT_SIDE
        options = [(fa, fb), (not fa, not fb), (fa, not fb), (not fa, fb)]
        for oa, ob in options:
            walk = cyclically_reduce(_loop(wa, s, oa) + sides + _loop(wb, tt, ob) + back)
            if _simple(t, walk):
                results.append(walk)
                break
        else:
            logger.debug(f"No simple shadow for arc {arc}")
    else:
        n = len(wa)
        if s != tt:
            candidates = [
                sides + _loop(wa, tt, True, (s - tt) % n),
                sides + _loop(wa, tt, False, (tt - s) % n),
            ]
        else:
            candidates = [sides, sides + _loop(wa, tt, True), sides + _loop(wa, tt, False)]
        for candidate in candidates:
            walk = cyclically_reduce(candidate)
            if _simple(t, walk):
                results.append(walk)
        if s == tt and len(results) > 2:
            results = results[:2]
    return results
