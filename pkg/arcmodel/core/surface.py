"""
Surfaces, ideal triangulations and flips.

Sides are signed edge labels: edge ``e`` has the two sides ``e`` and ``~e``
(``~e == -e - 1``). A triangle is a counter-clockwise triple of sides and a
side runs from its tail vertex to its head vertex with its triangle on the
left. Side ``e`` and side ``~e`` are glued with opposite orientations.
"""

import hashlib
import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from arcmodel.errors import TriangulationMismatch, UnflippableEdge, UnsupportedSurface

logger = logging.getLogger(__name__)

Triangle = Tuple[int, int, int]


def edge_of(side: int) -> int:
    """Edge index carrying a side."""
    return side if side >= 0 else ~side


def all_sides(edge_count: int) -> List[int]:
    """Every side of a triangulation in the order e0, ~e0, e1, ~e1, ..."""
    sides = []
    for e in range(edge_count):
        sides.extend((e, ~e))
    return sides


@dataclass(frozen=True)
class SurfaceType:
    """Topological type of a finite-type orientable surface."""
    genus: int
    punctures: int
    boundary_components: int = 0

    def __post_init__(self):
        if min(self.genus, self.punctures, self.boundary_components) < 0:
            raise ValueError(f"negative surface parameter in {self}")

    @property
    def euler_characteristic(self) -> int:
        return euler_characteristic(self)

    @property
    def ideal_vertices(self) -> int:
        """Punctures plus boundary components (boundary is treated as punctures)."""
        return self.punctures + self.boundary_components

    @property
    def supports_triangulation(self) -> bool:
        return self.ideal_vertices >= 1 and self.euler_characteristic < 0

    @property
    def expected_edges(self) -> int:
        return 6 * self.genus - 6 + 3 * self.ideal_vertices

    @property
    def expected_triangles(self) -> int:
        return 4 * self.genus - 4 + 2 * self.ideal_vertices

    @property
    def label(self) -> str:
        text = f"S_{self.genus},{self.punctures}"
        if self.boundary_components:
            text += f"^{self.boundary_components}"
        return text

    def to_dict(self) -> Dict:
        return {
            "genus": self.genus,
            "punctures": self.punctures,
            "boundary_components": self.boundary_components,
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "SurfaceType":
        return cls(data["genus"], data["punctures"], data.get("boundary_components", 0))


def euler_characteristic(s: SurfaceType) -> int:
    """Euler characteristic 2 - 2g - p - b."""
    return 2 - 2 * s.genus - s.punctures - s.boundary_components


@dataclass(frozen=True)
class IdealTriangulation:
    """
    An ideal triangulation given by counter-clockwise side triples.

    The gluing pairs side ``e`` with side ``~e``; edge labels are stable
    string identifiers, one per edge.
    """
    triangles: Tuple[Triangle, ...]
    labels: Tuple[str, ...]
    surface: Optional[SurfaceType] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "triangles", tuple(_canonical_rotation(t) for t in self.triangles))
        object.__setattr__(self, "labels", tuple(self.labels))
        self.validate()

    # -- structure -------------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.labels)

    @property
    def triangle_count(self) -> int:
        return len(self.triangles)

    @cached_property
    def side_index(self) -> Dict[int, Tuple[int, int]]:
        """Map side -> (triangle index, position within the triangle)."""
        index = {}
        for ti, tri in enumerate(self.triangles):
            for pos, side in enumerate(tri):
                index[side] = (ti, pos)
        return index

    def next_side(self, side: int) -> int:
        """The side following ``side`` counter-clockwise in its triangle."""
        ti, pos = self.side_index[side]
        return self.triangles[ti][(pos + 1) % 3]

    @cached_property
    def _vertex_classes(self) -> Dict[int, int]:
        graph = nx.Graph()
        graph.add_nodes_from(all_sides(self.edge_count))
        # head(s_i) = tail(s_{i+1}) and head(s) = tail(~s)
        for tri in self.triangles:
            for pos in range(3):
                graph.add_edge(~tri[pos], tri[(pos + 1) % 3])
        order = {side: i for i, side in enumerate(all_sides(self.edge_count))}
        classes = sorted(
            (min(component, key=order.get) for component in nx.connected_components(graph)),
            key=order.get,
        )
        roots = {root: vid for vid, root in enumerate(classes)}
        tails = {}
        for component in nx.connected_components(graph):
            vid = roots[min(component, key=order.get)]
            for side in component:
                tails[side] = vid
        return tails

    def tail(self, side: int) -> int:
        """Vertex id at the tail of a side."""
        return self._vertex_classes[side]

    def head(self, side: int) -> int:
        return self._vertex_classes[~side]

    def edge_ends(self, edge: int) -> Tuple[int, int]:
        return self.tail(edge), self.head(edge)

    @property
    def vertex_count(self) -> int:
        return len(set(self._vertex_classes.values()))

    @cached_property
    def identifier(self) -> str:
        """Content digest identifying this triangulation."""
        payload = json.dumps(
            {"triangles": [list(t) for t in self.triangles], "labels": list(self.labels)},
            sort_keys=True,
        )
        return hashlib.sha1(payload.encode("utf-8")).hexdigest()[:12]

    def validate(self) -> None:
        """Check the gluing, connectivity and Euler counts.

        Raises:
            ValueError: If the side triples do not describe a triangulated surface
        """
        n = len(self.labels)
        seen = [side for tri in self.triangles for side in tri]
        if sorted(seen) != sorted(all_sides(n)):
            raise ValueError("every edge must appear exactly once as e and once as ~e")
        dual = nx.Graph()
        dual.add_nodes_from(range(len(self.triangles)))
        where = {}
        for ti, tri in enumerate(self.triangles):
            for side in tri:
                where[side] = ti
        for e in range(n):
            dual.add_edge(where[e], where[~e])
        if self.triangles and not nx.is_connected(dual):
            raise ValueError("triangulation is not connected")
        if 3 * len(self.triangles) != 2 * n:
            raise ValueError("edge and triangle counts are inconsistent")
        if self.surface is not None:
            if n != self.surface.expected_edges or len(self.triangles) != self.surface.expected_triangles:
                raise ValueError(f"counts do not match {self.surface.label}")

    # -- moves -----------------------------------------------------------

    def is_flippable(self, edge: int) -> bool:
        return self.side_index[edge][0] != self.side_index[~edge][0]

    def flip(self, edge: int) -> Tuple["IdealTriangulation", "CoordinateMap"]:
        return flip(self, edge)

    def reorient(self, edge: int) -> "IdealTriangulation":
        """Swap the two sides of an edge."""
        def swap(side):
            if side == edge:
                return ~edge
            if side == ~edge:
                return edge
            return side
        return IdealTriangulation(
            tuple(tuple(swap(s) for s in tri) for tri in self.triangles), self.labels, self.surface
        )

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> Dict:
        return {
            "surface": self.surface.to_dict() if self.surface else None,
            "labels": list(self.labels),
            "triangles": [list(t) for t in self.triangles],
            "identifier": self.identifier,
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "IdealTriangulation":
        surface = SurfaceType.from_dict(data["surface"]) if data.get("surface") else None
        return cls(tuple(tuple(t) for t in data["triangles"]), tuple(data["labels"]), surface)


def _rotate_to(tri: Triangle, side: int) -> Triangle:
    pos = tri.index(side)
    return tri[pos:] + tri[:pos]


def _canonical_rotation(tri: Sequence[int]) -> Triangle:
    """Rotate a side triple so it starts at its lowest side (e before ~e)."""
    tri = tuple(tri)
    first = min(tri, key=lambda s: (edge_of(s), s < 0))
    return _rotate_to(tri, first)


# A flip step records the flipped edge and the edges of the quadrilateral
# around it as (a, b, c, d) with (a, c) and (b, d) opposite.
FlipStep = Tuple[int, Tuple[int, int, int, int]]


def flip(t: IdealTriangulation, edge: int) -> Tuple[IdealTriangulation, "CoordinateMap"]:
    """Flip an edge.

    Triangles (e, a, b) and (~e, c, d) become (e, d, a) and (~e, b, c).

    Args:
        t: The triangulation
        edge: Edge index to flip

    Returns:
        The flipped triangulation and the coordinate transport onto it

    Raises:
        UnflippableEdge: If both sides of the edge lie in one triangle
    """
    if not t.is_flippable(edge):
        raise UnflippableEdge(f"edge {t.labels[edge]} bounds a single triangle on both sides")
    i1, _ = t.side_index[edge]
    i2, _ = t.side_index[~edge]
    _, a, b = _rotate_to(t.triangles[i1], edge)
    _, c, d = _rotate_to(t.triangles[i2], ~edge)
    triangles = list(t.triangles)
    triangles[i1] = (edge, d, a)
    triangles[i2] = (~edge, b, c)
    flipped = IdealTriangulation(tuple(triangles), t.labels, t.surface)
    step = (edge, (edge_of(a), edge_of(b), edge_of(c), edge_of(d)))
    logger.debug(f"Flipped edge {t.labels[edge]} ({t.identifier} -> {flipped.identifier})")
    return flipped, CoordinateMap(t, flipped, (step,))


def flip_inverse(t: IdealTriangulation, edge: int) -> Tuple[IdealTriangulation, "CoordinateMap"]:
    """Undo ``flip(s, edge)``.

    Flipping the same edge again yields s with that edge re-oriented and its
    two triangles exchanged; both are put back so the result equals s.
    """
    flipped, transport_map = flip(t, edge)
    i1, _ = flipped.side_index[edge]
    i2, _ = flipped.side_index[~edge]
    triangles = list(flipped.reorient(edge).triangles)
    triangles[i1], triangles[i2] = triangles[i2], triangles[i1]
    restored = IdealTriangulation(tuple(triangles), t.labels, t.surface)
    return restored, CoordinateMap(t, restored, transport_map.steps)


def flip_sequence(t: IdealTriangulation, edges: Iterable[int]) -> Tuple[IdealTriangulation, "CoordinateMap"]:
    """Apply a flip word, returning the final triangulation and the composite transport."""
    current = t
    composite = CoordinateMap.identity(t)
    for edge in edges:
        current, step = flip(current, edge)
        composite = composite.then(step)
    return current, composite


class CoordinateMap:
    """Piecewise-linear transport of normal coordinates between triangulations."""

    def __init__(self, source: IdealTriangulation, target: IdealTriangulation,
                 steps: Sequence[FlipStep] = ()):
        self.source = source
        self.target = target
        self.steps = tuple(steps)

    @classmethod
    def identity(cls, t: IdealTriangulation) -> "CoordinateMap":
        return cls(t, t, ())

    def then(self, other: "CoordinateMap") -> "CoordinateMap":
        """Composite map: first self, then other."""
        if other.source.identifier != self.target.identifier:
            raise TriangulationMismatch("coordinate maps do not compose")
        return CoordinateMap(self.source, other.target, self.steps + other.steps)

    def inverse(self) -> "CoordinateMap":
        # The flip formula is symmetric in the two opposite pairs, so each
        # step is undone by itself.
        return CoordinateMap(self.target, self.source, tuple(reversed(self.steps)))

    def apply(self, coords: Sequence[int]) -> Tuple[int, ...]:
        x = list(coords)
        for edge, (a, b, c, d) in self.steps:
            x[edge] = max(x[a] + x[c], x[b] + x[d]) - x[edge]
        return tuple(x)

    def __repr__(self):
        return f"CoordinateMap({self.source.identifier} -> {self.target.identifier}, {len(self.steps)} flips)"


def transport(u, m: CoordinateMap):
    """Carry a multicurve along a coordinate map.

    Args:
        u: NormalMultiCurve on the source triangulation of m
        m: The coordinate map

    Returns:
        The same isotopy class in coordinates of the target triangulation

    Raises:
        TriangulationMismatch: If u does not live on m.source
    """
    from arcmodel.core.curves import NormalMultiCurve

    if u.triangulation_id != m.source.identifier:
        raise TriangulationMismatch(
            f"curve lives on {u.triangulation_id}, map starts at {m.source.identifier}"
        )
    return NormalMultiCurve(m.apply(u.coords), m.target)


def check_supported(s: SurfaceType) -> None:
    if not s.supports_triangulation:
        raise UnsupportedSurface(
            f"{s.label} has no ideal triangulation (chi={s.euler_characteristic}, "
            f"punctures+boundary={s.ideal_vertices})"
        )
