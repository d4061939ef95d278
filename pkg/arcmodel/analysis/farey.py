"""
Curve-graph distances.

On complexity-one surfaces (the once-punctured torus and the four-holed
sphere) the curve graph is the Farey graph and distances are exact: after a
change of basis moving the first slope to infinity, geodesics to the second
slope run through the ladder of fractions met while descending to it in the
Stern-Brocot tree. Elsewhere only bounds are available.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from arcmodel.config import settings
from arcmodel.core.curves import NormalMultiCurve
from arcmodel.core.intersection import intersection_number
from arcmodel.core.mcg import apply, dehn_twist
from arcmodel.core.registry import surface_for
from arcmodel.core.subsurface import SubsurfaceSpec

logger = logging.getLogger(__name__)

Slope = Tuple[int, int]
INFINITY: Slope = (1, 0)


def slope(p: int, q: int) -> Slope:
    """p/q in lowest terms with q >= 0; 1/0 is infinity."""
    if p == 0 and q == 0:
        raise ValueError("0/0 is not a slope")
    g = math.gcd(p, q)
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return (p, q)


def parse_slope(text: str) -> Slope:
    text = text.strip().lower()
    if text in ("inf", "infinity", "oo"):
        return INFINITY
    if "/" in text:
        p, q = text.split("/", 1)
        return slope(int(p), int(q))
    return slope(int(text), 1)


def format_slope(s: Slope) -> str:
    return f"{s[0]}/{s[1]}"


def farey_adjacent(a: Slope, b: Slope) -> bool:
    return abs(a[0] * b[1] - a[1] * b[0]) == 1


def _bezout(a: int, b: int) -> Tuple[int, int]:
    """(x, y) with a * x + b * y == gcd(a, b)."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        quotient, remainder = divmod(a, b)
        a, b = b, remainder
        x0, x1 = x1, x0 - quotient * x1
        y0, y1 = y1, y0 - quotient * y1
    if a < 0:
        x0, y0 = -x0, -y0
    return x0, y0


def _to_infinity(a: Slope, b: Slope) -> Slope:
    """Image of b under an SL(2, Z) map sending a to infinity."""
    r, s = a
    u, v = _bezout(r, s)
    # [[r, -v], [s, u]] has determinant 1 and sends infinity to a.
    p, q = b
    return slope(u * p + v * q, -s * p + r * q)


def ladder(x: Slope) -> List[Slope]:
    """Infinity, the two integers around x and the Stern-Brocot descent to x."""
    if x == INFINITY:
        return [INFINITY]
    value = Fraction(*x)
    floor = math.floor(value)
    left, right = (floor, 1), (floor + 1, 1)
    found = [INFINITY, left, right]
    if value == floor:
        return [INFINITY, left]
    while True:
        mediant = (left[0] + right[0], left[1] + right[1])
        found.append(mediant)
        if mediant == x:
            return found
        if value < Fraction(*mediant):
            right = mediant
        else:
            left = mediant


def _slope_graph(slopes: Sequence[Slope]) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(slopes)
    for a, b in combinations(slopes, 2):
        if farey_adjacent(a, b):
            graph.add_edge(a, b)
    return graph


def farey_distance(a: Slope, b: Slope) -> int:
    """Distance between two slopes in the Farey graph."""
    a, b = slope(*a), slope(*b)
    if a == b:
        return 0
    x = _to_infinity(a, b)
    graph = _slope_graph(ladder(x))
    return nx.shortest_path_length(graph, INFINITY, x)


def farey_graph(bound: Optional[int] = None) -> nx.Graph:
    """Farey graph on infinity and the slopes in [-1, 1] with denominators up to bound."""
    bound = settings.farey_denominator_bound if bound is None else bound
    slopes = {INFINITY}
    for q in range(1, bound + 1):
        for p in range(-q, q + 1):
            slopes.add(slope(p, q))
    return _slope_graph(sorted(slopes))


def bounded_farey_distances(bound: Optional[int] = None) -> Dict[Slope, Dict[Slope, int]]:
    """All-pairs BFS distances in farey_graph(bound)."""
    return {s: dict(d) for s, d in nx.all_pairs_shortest_path_length(farey_graph(bound))}


# -- curve graphs ---------------------------------------------------------------

def curve_graph_bounds(a: NormalMultiCurve, b: NormalMultiCurve) -> Tuple[int, int]:
    """(lower, upper) bounds on the curve-graph distance outside complexity one.

    Disjoint distinct curves are adjacent. Crossing curves are at distance at
    least 2 and at most factor * log2(i) + offset.
    """
    if a.coords == b.coords:
        return 0, 0
    i = intersection_number(a, b)
    if i == 0:
        return 1, 1
    upper = math.floor(settings.curve_graph_log_factor * math.log2(i) + settings.curve_graph_offset)
    return 2, max(2, upper)


@dataclass
class FareyChart:
    """
    Slope coordinates for the curves of a complexity-one subsurface.

    With reference curves alpha, beta meeting ``unit`` times, a curve x has
    slope p/q with |q| = i(x, alpha) / unit and |p| = i(x, beta) / unit; the
    sign comes from comparing with the twisted curve T_alpha(beta), whose
    slope is shear/1 (shear is 1 on the torus and 2 on the sphere).
    """
    subsurface: SubsurfaceSpec
    alpha: NormalMultiCurve
    beta: NormalMultiCurve
    twisted: NormalMultiCurve
    unit: int
    shear: int

    def slope_of(self, x: NormalMultiCurve) -> Slope:
        q = intersection_number(x, self.alpha) // self.unit
        p = intersection_number(x, self.beta) // self.unit
        if p and q and intersection_number(x, self.twisted) // self.unit != abs(p - self.shear * q):
            p = -p
        return slope(p, q)

    def distance(self, x: NormalMultiCurve, y: NormalMultiCurve) -> int:
        if x.coords == y.coords:
            return 0
        return farey_distance(self.slope_of(x), self.slope_of(y))


def farey_chart(W: SubsurfaceSpec) -> Optional[FareyChart]:
    """A chart for a complexity-one subsurface from two registered curves inside it.

    Returns:
        The chart, or None when W is not of Farey type or no suitable pair is registered
    """
    if not W.is_farey_type():
        return None
    unit = 1 if W.genus == 1 else 2
    std = surface_for(W.triangulation)
    inside = [std.curve(name) for name in std.curves_inside(W)]
    for alpha, beta in combinations(inside, 2):
        if intersection_number(alpha, beta) == unit:
            twisted = apply(dehn_twist(alpha), beta)
            shear = intersection_number(twisted, beta) // unit
            return FareyChart(W, alpha, beta, twisted, unit, shear)
    logger.debug(f"No registered reference pair inside {W!r}")
    return None
