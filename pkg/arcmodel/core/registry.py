"""
Standard triangulations and their named curve registries.

For genus g >= 1 the surface is the 4g-gon with boundary word
a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1, all corners glued to one puncture.
Corners are P0 .. P(4g-1); side p runs from Pp to P(p+1). The polygon is
fanned from P0 by the diagonals d2 .. d(4g-2), giving triangles
t_j = (P0 P_j, P_j P_j+1, P_j+1 P0) for j = 1 .. 4g-2.

For genus 0 two triangles are glued along their three sides (the thrice
punctured sphere).

Every further puncture cones off the current triangle 0: a new vertex w is
joined to the three corners by spokes, and curves crossing that triangle are
rerouted around the corner they cut.

Curve names:
    alpha_k, beta_k   the curves crossing side a_k (resp. b_k) exactly once
    gamma_k           the curve crossing a_k and a_(k+1) once each
    s_k               boundary of the one-holed torus of handle k
    level_h           boundary of the subsurface made of handles 1 .. h
    c_i_j             boundary of a neighbourhood of an edge joining punctures i and j
    slope_p_q         slope p/q on the once-punctured torus
"""

import logging
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from arcmodel.core.complement import fills
from arcmodel.core.curves import NormalMultiCurve, Walk, cyclically_reduce, is_peripheral_walk
from arcmodel.core.subsurface import SubsurfaceSpec
from arcmodel.core.surface import IdealTriangulation, SurfaceType, Triangle, check_supported, edge_of
from arcmodel.errors import UnknownCurve, UnsupportedSurface

logger = logging.getLogger(__name__)

SLOPE_NAME = re.compile(r"^slope_(-?\d+)_(-?\d+)$")


@dataclass(frozen=True)
class Cone:
    """A coning step: ``spokes[i]`` runs from the new vertex to the tail of ``sides[i]``."""
    sides: Triangle
    spokes: Tuple[int, int, int]

    def triangles(self) -> List[Triangle]:
        s, e = self.sides, self.spokes
        return [(s[i], ~e[(i + 1) % 3], e[i]) for i in range(3)]

    def reroute(self, walk: Sequence[int]) -> Walk:
        """Rewrite a walk of the coarser triangulation in the coned one."""
        n = len(walk)
        out = []
        for k in range(n):
            entry, exit_ = ~walk[k - 1], walk[k]
            if entry in self.sides and exit_ in self.sides:
                i, j = self.sides.index(entry), self.sides.index(exit_)
                if j == (i + 1) % 3:
                    out.append(~self.spokes[(i + 1) % 3])
                else:
                    out.append(self.spokes[i])
            out.append(exit_)
        return tuple(out)


def slope_coordinates(p: int, q: int) -> Tuple[int, int, int]:
    """Normal coordinates (a1, b1, d2) of the slope p/q on the standard once-punctured torus."""
    return (abs(p), abs(q), abs(q - p))


class StandardSurface:
    """
    The standard triangulation of a surface together with its curve registry.

    Args:
        surface: A surface supporting an ideal triangulation
    """

    def __init__(self, surface: SurfaceType):
        check_supported(surface)
        self.surface = surface
        self.genus = surface.genus
        vertices = surface.ideal_vertices
        if self.genus:
            self.polygon_size = 4 * self.genus
            triangles, labels = self._polygon()
            extra = vertices - 1
        else:
            self.polygon_size = 0
            triangles, labels = [(0, 1, 2), (~2, ~1, ~0)], ["e0", "e1", "e2"]
            extra = vertices - 3
        self.base = IdealTriangulation(tuple(triangles), tuple(labels), SurfaceType(self.genus, vertices - extra))
        self.cones: List[Cone] = []
        for c in range(extra):
            first = len(labels)
            cone = Cone(tuple(triangles[0]), (first, first + 1, first + 2))
            labels.extend(f"p{c + 1}_{i}" for i in range(3))
            coned = cone.triangles()
            triangles[0] = coned[0]
            triangles.extend(coned[1:])
            self.cones.append(cone)
        self.triangulation = IdealTriangulation(tuple(triangles), tuple(labels), surface)
        logger.debug(f"Standard triangulation of {surface.label}: {self.triangulation.identifier}")

    # -- polygon bookkeeping ----------------------------------------------

    def _side(self, p: int) -> int:
        k, offset = divmod(p, 4)
        edge = 2 * k + offset % 2
        return edge if offset < 2 else ~edge

    def _diagonal(self, j: int) -> int:
        return 2 * self.genus + j - 2

    def _polygon(self) -> Tuple[List[Triangle], List[str]]:
        n = self.polygon_size
        labels = []
        for k in range(1, self.genus + 1):
            labels.extend((f"a{k}", f"b{k}"))
        labels.extend(f"d{j}" for j in range(2, n - 1))
        triangles = []
        for j in range(1, n - 1):
            x = self._side(0) if j == 1 else self._diagonal(j)
            y = self._side(n - 1) if j == n - 2 else ~self._diagonal(j + 1)
            triangles.append((x, self._side(j), y))
        return triangles, labels

    def _triangle_at(self, p: int) -> int:
        n = self.polygon_size
        if p == 0:
            return 1
        if p == n - 1:
            return n - 2
        return p

    @staticmethod
    def _partner(p: int) -> int:
        return p - p % 4 + (p % 4 + 2) % 4

    def _move(self, start: int, end: int) -> List[int]:
        if end > start:
            return [~self._diagonal(j + 1) for j in range(start, end)]
        return [self._diagonal(j) for j in range(start, end, -1)]

    def reroute(self, walk: Sequence[int]) -> Walk:
        for cone in self.cones:
            walk = cone.reroute(walk)
        return tuple(walk)

    def polygon_walk(self, positions: Sequence[int]) -> Walk:
        """Closed walk leaving the polygon through the given side positions in turn."""
        walk: List[int] = []
        for idx, p in enumerate(positions):
            walk.extend(self._move(self._triangle_at(self._partner(positions[idx - 1])), self._triangle_at(p)))
            walk.append(self._side(p))
        return self.reroute(cyclically_reduce(walk))

    def region_curve(self, start: int, end: int) -> Optional[NormalMultiCurve]:
        """Boundary of the part of the polygon between the diagonals from P0 to P_start and P_end."""
        coords = [0] * self.base.edge_count
        for p in range(start, end):
            coords[edge_of(self._side(p))] = 2
        for j in range(max(start + 1, 2), min(end, self.polygon_size - 1)):
            coords[self._diagonal(j)] = 2
        curve = NormalMultiCurve(tuple(coords), self.base)
        if not curve.is_connected or is_peripheral_walk(self.base, curve.walk):
            return None
        return NormalMultiCurve.from_walk(self.triangulation, self.reroute(curve.walk))

    # -- registry -----------------------------------------------------------

    def _edge_neighbourhood(self, edge: int) -> NormalMultiCurve:
        t = self.triangulation
        ends = set(t.edge_ends(edge))
        coords = [0] * t.edge_count
        for f in range(t.edge_count):
            if f != edge:
                coords[f] = sum(1 for v in t.edge_ends(f) if v in ends)
        return NormalMultiCurve(tuple(coords), t)

    @cached_property
    def curves(self) -> Dict[str, NormalMultiCurve]:
        """Named curves in registry order."""
        t = self.triangulation
        named: Dict[str, NormalMultiCurve] = {}
        g = self.genus
        for k in range(1, g + 1):
            base = 4 * (k - 1)
            named[f"alpha_{k}"] = NormalMultiCurve.from_walk(t, self.polygon_walk([base]))
            named[f"beta_{k}"] = NormalMultiCurve.from_walk(t, self.polygon_walk([base + 1]))
            if k < g:
                named[f"gamma_{k}"] = NormalMultiCurve.from_walk(t, self.polygon_walk([base, base + 4]))
        for k in range(1, g + 1):
            curve = self.region_curve(4 * (k - 1), 4 * k)
            if curve is not None:
                named[f"s_{k}"] = curve
        for h in range(1, g):
            curve = self.region_curve(0, 4 * h)
            if curve is not None:
                named[f"level_{h}"] = curve
        for e in range(t.edge_count):
            i, j = sorted(t.edge_ends(e))
            name = f"c_{i}_{j}"
            if i == j or name in named:
                continue
            curve = self._edge_neighbourhood(e)
            if curve.coords in {c.coords for c in named.values()}:
                continue
            if curve.is_connected and not is_peripheral_walk(t, curve.walk):
                named[name] = curve
        if self.is_punctured_torus:
            for p, q in ((0, 1), (1, 0), (1, 1), (-1, 1)):
                named[f"slope_{p}_{q}"] = self.slope(p, q)
        logger.debug(f"Registry of {self.surface.label}: {len(named)} curves")
        return named

    @property
    def is_punctured_torus(self) -> bool:
        return self.genus == 1 and self.surface.ideal_vertices == 1

    def slope(self, p: int, q: int) -> NormalMultiCurve:
        """The slope p/q curve on the once-punctured torus."""
        if not self.is_punctured_torus:
            raise UnsupportedSurface("slopes are defined on the once-punctured torus only")
        return NormalMultiCurve(slope_coordinates(p, q), self.triangulation)

    def curve(self, name: str) -> NormalMultiCurve:
        if name in self.curves:
            return self.curves[name]
        match = SLOPE_NAME.match(name)
        if match and self.is_punctured_torus:
            return self.slope(int(match.group(1)), int(match.group(2)))
        raise UnknownCurve(f"no curve named {name!r} on {self.surface.label}")

    def names(self) -> List[str]:
        return list(self.curves)

    def name_of(self, curve: NormalMultiCurve) -> Optional[str]:
        for name, registered in self.curves.items():
            if registered.coords == curve.coords:
                return name
        return None

    def lickorish_names(self) -> List[str]:
        if not self.genus:
            return [n for n in self.curves if n.startswith("c_")]
        return [n for n in self.curves if n.split("_")[0] in ("alpha", "beta", "gamma")]

    def humphries_names(self) -> List[str]:
        if not self.genus:
            return self.lickorish_names()
        chain = ["alpha_1", "beta_1"]
        for k in range(1, self.genus):
            chain.extend((f"gamma_{k}", f"beta_{k + 1}"))
        if self.genus >= 2:
            chain.append("alpha_2")
        return chain

    # -- subsurfaces ----------------------------------------------------------

    def handle(self, k: int) -> SubsurfaceSpec:
        """The one-holed torus of handle k (the whole surface in genus one)."""
        if f"s_{k}" not in self.curves:
            return SubsurfaceSpec.whole_surface(self.triangulation, name=f"handle_{k}")
        return SubsurfaceSpec.containing(self.curves[f"s_{k}"], self.curves[f"alpha_{k}"], name=f"handle_{k}")

    def handles(self, h: int) -> SubsurfaceSpec:
        """The subsurface made of handles 1 .. h."""
        if f"level_{h}" not in self.curves:
            return SubsurfaceSpec.whole_surface(self.triangulation, name=f"handles_{h}")
        return SubsurfaceSpec.containing(self.curves[f"level_{h}"], self.curves["alpha_1"], name=f"handles_{h}")

    def curves_inside(self, W: SubsurfaceSpec) -> List[str]:
        """Registered curves lying in W, neither peripheral nor parallel to its boundary."""
        return [name for name, curve in self.curves.items() if W.contains_curve(curve)]

    # -- Alexander system ---------------------------------------------------------

    @cached_property
    def alexander_system(self) -> List[Walk]:
        """Oriented walks of the distinct registered curves; they fill the surface."""
        t = self.triangulation
        seen: Dict[Tuple[int, ...], NormalMultiCurve] = {}
        for curve in self.curves.values():
            seen.setdefault(curve.coords, curve)
        curves = list(seen.values())
        if not fills(curves, t):
            logger.warning(f"Registered curves of {self.surface.label} do not fill")
        return [curve.walk for curve in curves]

    def to_dict(self) -> Dict:
        return {
            "surface": self.surface.to_dict(),
            "triangulation": self.triangulation.to_dict(),
            "curves": {name: list(curve.coords) for name, curve in self.curves.items()},
        }


_BY_TRIANGULATION: Dict[str, StandardSurface] = {}


@lru_cache(maxsize=64)
def standard_surface(s: SurfaceType) -> StandardSurface:
    """The (cached) standard surface of a surface type.

    Raises:
        UnsupportedSurface: When chi >= 0 or there are no punctures
    """
    std = StandardSurface(s)
    _BY_TRIANGULATION.setdefault(std.triangulation.identifier, std)
    return std


def build_standard_triangulation(s: SurfaceType) -> IdealTriangulation:
    """Deterministic polygon-scheme triangulation of s.

    Args:
        s: A surface with chi < 0 and at least one puncture or boundary component

    Returns:
        The standard ideal triangulation

    Raises:
        UnsupportedSurface: When chi >= 0 or there are no punctures
    """
    return standard_surface(s).triangulation


def surface_for(t: IdealTriangulation) -> StandardSurface:
    """The standard surface a triangulation was built as."""
    if t.identifier not in _BY_TRIANGULATION and t.surface is not None:
        standard_surface(t.surface)
    try:
        return _BY_TRIANGULATION[t.identifier]
    except KeyError:
        raise UnsupportedSurface(f"triangulation {t.identifier} is not a standard triangulation")
