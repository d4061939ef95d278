"""
Geometric intersection numbers.

Two closed walks in minimal position cross once for every maximal shared
run whose two ends leave the run on opposite sides (a linked run). The
realization in ``embedding`` puts its crossings exactly at these runs, so
the count here agrees with the crossing count of ``reduce_bigons``.
"""

import logging
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple, Union

from arcmodel.core.curves import NormalMultiCurve, Walk, reverse_walk, turn
from arcmodel.core.surface import IdealTriangulation

logger = logging.getLogger(__name__)

# (i, j, b', m): a[i..i+m-1] == b'[j..j+m-1] with b' either b or its reverse.
LinkedRun = Tuple[int, int, Walk, int]


def linked_runs(t: IdealTriangulation, a: Walk, b: Walk) -> Iterator[LinkedRun]:
    """Yield the maximal shared runs of a and b (either orientation) that cross."""
    la, lb = len(a), len(b)
    if not la or not lb:
        return
    cap = la + lb
    for other in (b, reverse_walk(b)):
        for i in range(la):
            for j in range(lb):
                if a[i] != other[j] or a[i - 1] == other[j - 1]:
                    continue
                m = 1
                while m < cap and a[(i + m) % la] == other[(j + m) % lb]:
                    m += 1
                if m >= cap:
                    continue
                if turn(t, a, i) != turn(t, a, i + m):
                    yield (i, j, other, m)


@lru_cache(maxsize=200000)
def _walk_intersection(t: IdealTriangulation, a: Walk, b: Walk) -> int:
    return sum(1 for _ in linked_runs(t, a, b))


def walk_intersection(t: IdealTriangulation, a: Sequence[int], b: Sequence[int]) -> int:
    """Minimal number of crossings between two reduced closed walks."""
    a, b = tuple(a), tuple(b)
    if a > b:
        a, b = b, a
    return _walk_intersection(t, a, b)


def walk_self_intersection(t: IdealTriangulation, a: Sequence[int]) -> int:
    """Minimal number of self-crossings of a reduced closed walk."""
    a = tuple(a)
    return _walk_intersection(t, a, a) // 2


Curves = Union[NormalMultiCurve, Sequence[NormalMultiCurve]]


def _as_list(u: Curves) -> List[NormalMultiCurve]:
    return [u] if isinstance(u, NormalMultiCurve) else list(u)


def intersection_number(u: Curves, v: Curves) -> int:
    """Geometric intersection number of multicurves or curve collections.

    For collections the result is the sum over pairs of elements; within a
    multicurve, components count with their multiplicities.

    Args:
        u: A NormalMultiCurve or a list of them
        v: A NormalMultiCurve or a list of them

    Returns:
        The isotopy-minimal number of crossings

    Raises:
        TriangulationMismatch: If the operands live on different triangulations
    """
    total = 0
    for x in _as_list(u):
        for y in _as_list(v):
            x.require_same_triangulation(y)
            t = x.triangulation
            for wa, ma in x.components:
                for wb, mb in y.components:
                    total += ma * mb * walk_intersection(t, wa, wb)
    return total


def self_intersection(u: Curves) -> int:
    """i(u, u) for a collection: the crossings among distinct elements, counted once."""
    curves = _as_list(u)
    total = 0
    for idx, x in enumerate(curves):
        for y in curves[idx + 1:]:
            total += intersection_number(x, y)
    return total
