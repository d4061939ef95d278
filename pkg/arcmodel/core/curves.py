"""
Multicurves in normal coordinates and their side walks.

A closed curve in normal position is recorded as the cyclic sequence of
sides it exits through, one entry per triangle it crosses. Exiting side
``s`` means entering the triangle of ``~s`` next.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Sequence, Tuple

from arcmodel.core.surface import IdealTriangulation, edge_of
from arcmodel.errors import NotAdmissible, TriangulationMismatch

logger = logging.getLogger(__name__)

Walk = Tuple[int, ...]

LEFT = -1
RIGHT = 1


def reverse_walk(walk: Sequence[int]) -> Walk:
    return tuple(~s for s in reversed(walk))


def cyclically_reduce(walk: Iterable[int]) -> Walk:
    """Cancel backtracks ``s, ~s`` including across the cyclic seam."""
    stack: List[int] = []
    for side in walk:
        if stack and stack[-1] == ~side:
            stack.pop()
        else:
            stack.append(side)
    start, end = 0, len(stack)
    while end - start >= 2 and stack[start] == ~stack[end - 1]:
        start += 1
        end -= 1
    return tuple(stack[start:end])


def _least_rotation(walk: Walk) -> Walk:
    if not walk:
        return walk
    return min(walk[i:] + walk[:i] for i in range(len(walk)))


def oriented_form(walk: Sequence[int]) -> Walk:
    """Canonical rotation of an oriented closed walk."""
    return _least_rotation(tuple(walk))


def canonical_walk(walk: Sequence[int]) -> Walk:
    """Canonical representative of an unoriented closed walk."""
    walk = tuple(walk)
    return min(_least_rotation(walk), _least_rotation(reverse_walk(walk)))


def walk_coordinates(walk: Iterable[int], edge_count: int) -> Tuple[int, ...]:
    coords = [0] * edge_count
    for side in walk:
        coords[edge_of(side)] += 1
    return tuple(coords)


def turn(t: IdealTriangulation, walk: Sequence[int], k: int) -> int:
    """Turn made at step k: the walk enters through ~walk[k-1] and exits walk[k].

    Returns RIGHT when the exit side follows the entry side counter-clockwise
    and LEFT otherwise.
    """
    n = len(walk)
    entry = ~walk[(k - 1) % n]
    return RIGHT if t.next_side(entry) == walk[k % n] else LEFT


def is_peripheral_walk(t: IdealTriangulation, walk: Sequence[int]) -> bool:
    """A reduced closed walk is peripheral exactly when it always turns the same way."""
    if not walk:
        return False
    first = turn(t, walk, 0)
    return all(turn(t, walk, k) == first for k in range(1, len(walk)))


def corner_counts(t: IdealTriangulation, coords: Sequence[int], ti: int) -> Tuple[int, int, int]:
    """Normal arcs cutting each corner of triangle ti.

    Entry i counts the arcs between side i and side i+1, i.e. around the
    head of side i.
    """
    tri = t.triangles[ti]
    x = [coords[edge_of(s)] for s in tri]
    return tuple((x[i] + x[(i + 1) % 3] - x[(i + 2) % 3]) // 2 for i in range(3))


def is_admissible(t: IdealTriangulation, coords: Sequence[int]) -> bool:
    if len(coords) != t.edge_count or any(c < 0 for c in coords):
        return False
    for tri in t.triangles:
        a, b, c = (coords[edge_of(s)] for s in tri)
        if (a + b + c) % 2 or a > b + c or b > a + c or c > a + b:
            return False
    return True


def trace_strands(t: IdealTriangulation, coords: Sequence[int]) -> List[Walk]:
    """Follow every normal arc and return the closed walks of the strands.

    A point on side s is addressed by its position counted from the tail of s.
    """
    corners = [corner_counts(t, coords, ti) for ti in range(t.triangle_count)]
    visited = [[False] * coords[e] for e in range(t.edge_count)]

    def mark(side, pos):
        e = edge_of(side)
        p = pos if side >= 0 else coords[e] - 1 - pos
        seen = visited[e][p]
        visited[e][p] = True
        return seen

    strands = []
    for e in range(t.edge_count):
        for start in range(coords[e]):
            if visited[e][start]:
                continue
            side, pos = e, start
            walk = []
            while not mark(side, pos):
                ti, i = t.side_index[side]
                tri = t.triangles[ti]
                before = corners[ti][(i + 2) % 3]
                if pos < before:
                    out = tri[(i + 2) % 3]
                    out_pos = coords[edge_of(out)] - 1 - pos
                else:
                    out = tri[(i + 1) % 3]
                    out_pos = coords[edge_of(side)] - 1 - pos
                walk.append(out)
                side, pos = ~out, coords[edge_of(out)] - 1 - out_pos
            strands.append(tuple(walk))
    return strands


@dataclass(frozen=True)
class NormalMultiCurve:
    """
    A multicurve given by its normal coordinates on an ideal triangulation.

    Equality is equality of coordinate vectors on the same triangulation.
    """
    coords: Tuple[int, ...]
    triangulation: IdealTriangulation = field(compare=False, repr=False)
    triangulation_id: str = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        object.__setattr__(self, "triangulation_id", self.triangulation.identifier)
        if not is_admissible(self.triangulation, self.coords):
            raise NotAdmissible(f"coordinates {self.coords} violate the triangle conditions")

    @classmethod
    def empty(cls, t: IdealTriangulation) -> "NormalMultiCurve":
        return cls((0,) * t.edge_count, t)

    @classmethod
    def from_walk(cls, t: IdealTriangulation, walk: Sequence[int]) -> "NormalMultiCurve":
        return cls(walk_coordinates(cyclically_reduce(walk), t.edge_count), t)

    @property
    def is_empty(self) -> bool:
        return not any(self.coords)

    @cached_property
    def strands(self) -> List[Walk]:
        return trace_strands(self.triangulation, self.coords)

    @cached_property
    def components(self) -> List[Tuple[Walk, int]]:
        """Canonical walks of the components with multiplicities, ordered by coordinates."""
        counts: Dict[Walk, int] = {}
        for strand in self.strands:
            key = canonical_walk(strand)
            counts[key] = counts.get(key, 0) + 1
        n = self.triangulation.edge_count
        return sorted(counts.items(), key=lambda item: (walk_coordinates(item[0], n), item[0]))

    @property
    def is_connected(self) -> bool:
        return len(self.strands) == 1

    @property
    def walk(self) -> Walk:
        """Canonical walk of a connected curve."""
        if not self.is_connected:
            raise ValueError("walk is defined for connected curves only")
        return self.components[0][0]

    @property
    def is_peripheral(self) -> bool:
        return all(is_peripheral_walk(self.triangulation, w) for w, _ in self.components)

    @property
    def is_essential(self) -> bool:
        """Connected, non-empty and not peripheral."""
        return self.is_connected and not is_peripheral_walk(self.triangulation, self.walk)

    def require_same_triangulation(self, other: "NormalMultiCurve") -> None:
        if self.triangulation_id != other.triangulation_id:
            raise TriangulationMismatch(
                f"curves live on {self.triangulation_id} and {other.triangulation_id}"
            )

    def __add__(self, other: "NormalMultiCurve") -> "NormalMultiCurve":
        self.require_same_triangulation(other)
        return NormalMultiCurve(tuple(a + b for a, b in zip(self.coords, other.coords)), self.triangulation)

    def scaled(self, k: int) -> "NormalMultiCurve":
        return NormalMultiCurve(tuple(k * c for c in self.coords), self.triangulation)

    def to_dict(self) -> Dict:
        return {"triangulation": self.triangulation_id, "coords": list(self.coords)}


def decompose(u: NormalMultiCurve) -> List[Tuple[NormalMultiCurve, int]]:
    """Split a multicurve into connected components with multiplicities.

    Args:
        u: The multicurve

    Returns:
        (component, multiplicity) pairs in lexicographic order of coordinates
    """
    t = u.triangulation
    return [
        (NormalMultiCurve(walk_coordinates(walk, t.edge_count), t), mult)
        for walk, mult in u.components
    ]


def component_curves(u: NormalMultiCurve) -> List[NormalMultiCurve]:
    """Distinct components without multiplicity."""
    return [c for c, _ in decompose(u)]


def collection_key(curves: Iterable[NormalMultiCurve]) -> Tuple[Tuple[int, ...], ...]:
    """Canonical key of a curve collection: the sorted tuple of coordinate vectors."""
    return tuple(sorted(c.coords for c in curves))
