from __future__ import annotations

from math import gcd

import pytest

from arcmodel.core.curves import NormalMultiCurve, decompose
from arcmodel.core.embedding import find_bigons, overlay, realize_collection, reduce_bigons
from arcmodel.core.intersection import intersection_number, self_intersection
from arcmodel.core.mcg import apply, dehn_twist
from arcmodel.errors import NotAdmissible, TriangulationMismatch

from conftest import random_admissible


def _slopes(bound: int) -> list[tuple[int, int]]:
    found = [(1, 0)]
    for q in range(1, bound + 1):
        for p in range(-bound, bound + 1):
            if gcd(p, q) == 1:
                found.append((p, q))
    return found


def _bigon_free_crossings(u: NormalMultiCurve, v: NormalMultiCurve) -> int:
    return reduce_bigons(overlay(u, v)).crossings_between(0, 1)


@pytest.mark.parametrize("a", [(0, 1), (1, 0), (1, 1), (-1, 1), (2, 5), (-3, 7), (13, 20)])
def test_torus_slopes_intersect_by_determinant(torus, a) -> None:
    p, q = a
    u = torus.slope(p, q)
    for r, s in _slopes(6):
        assert intersection_number(u, torus.slope(r, s)) == abs(p * s - q * r)


@pytest.mark.slow
def test_torus_slope_grid(torus) -> None:
    slopes = _slopes(20)
    curves = {x: torus.slope(*x) for x in slopes}
    for p, q in slopes:
        for r, s in slopes:
            assert intersection_number(curves[(p, q)], curves[(r, s)]) == abs(p * s - q * r)


def test_registered_chain_intersections(genus2) -> None:
    i = intersection_number
    c = genus2.curve
    assert i(c("alpha_1"), c("beta_1")) == 1
    assert i(c("beta_1"), c("gamma_1")) == 1
    assert i(c("gamma_1"), c("beta_2")) == 1
    assert i(c("alpha_1"), c("gamma_1")) == 0
    assert i(c("alpha_1"), c("alpha_2")) == 0
    assert i(c("s_1"), c("alpha_1")) == 0
    assert i(c("s_1"), c("gamma_1")) == 2


def test_multiplicities_scale_intersection(torus) -> None:
    a, b = torus.slope(0, 1), torus.slope(2, 3)
    assert intersection_number(a.scaled(3), b) == 3 * intersection_number(a, b)
    assert intersection_number([a, a], b) == 2 * intersection_number(a, b)


def test_decompose_orders_components_by_coordinates(genus2) -> None:
    a1, a2 = genus2.curve("alpha_1"), genus2.curve("alpha_2")
    parts = decompose(a1.scaled(2) + a2)
    assert [(c.coords, m) for c, m in parts] == [(a2.coords, 1), (a1.coords, 2)]
    assert decompose(genus2.curve("beta_1")) == [(genus2.curve("beta_1"), 1)]


@pytest.mark.parametrize("surface", ["torus", "genus2"])
def test_decompose_rebuilds_random_multicurves(surface, request) -> None:
    std = request.getfixturevalue(surface)
    v = std.curve("beta_1")
    for u in random_admissible(std, 15, seed=31, max_coord=10):
        parts = decompose(u)
        assert all(c.is_connected for c, _ in parts)
        assert len({c.coords for c, _ in parts}) == len(parts)
        assert [c.coords for c, _ in parts] == sorted(c.coords for c, _ in parts)
        total = NormalMultiCurve.empty(std.triangulation)
        for c, m in parts:
            total = total + c.scaled(m)
        assert total == u
        assert intersection_number(u, v) == sum(m * intersection_number(c, v) for c, m in parts)


def test_self_intersection_counts_pairs_once(torus) -> None:
    curves = [torus.slope(0, 1), torus.slope(1, 0), torus.slope(1, 1)]
    assert self_intersection(curves) == 3
    assert self_intersection(torus.slope(2, 3)) == 0


def test_mixed_triangulations_are_rejected(torus, genus2) -> None:
    with pytest.raises(TriangulationMismatch):
        intersection_number(torus.slope(0, 1), genus2.curve("alpha_1"))


def test_inadmissible_coordinates(torus) -> None:
    with pytest.raises(NotAdmissible):
        NormalMultiCurve((1, 0, 0), torus.triangulation)


@pytest.mark.parametrize("surface", ["sphere5", "genus2"])
def test_bigon_reduction_agrees_on_random_pairs(request, surface) -> None:
    std = request.getfixturevalue(surface)
    curves = random_admissible(std, 20, seed=7, max_coord=12)
    for u, v in zip(curves[::2], curves[1::2]):
        reduced = reduce_bigons(overlay(u, v))
        assert not find_bigons(reduced)
        assert intersection_number(u, v) == reduced.crossings_between(0, 1)


@pytest.mark.parametrize("surface", ["sphere5", "genus2"])
def test_joint_realizations_have_no_bigons(request, surface) -> None:
    std = request.getfixturevalue(surface)
    curves = random_admissible(std, 20, seed=5)
    t = std.triangulation
    for u, v in zip(curves[::2], curves[1::2]):
        joint = realize_collection(t, [(0, u), (1, v)])
        assert not find_bigons(joint)
        assert joint.crossings_between(0, 1) == intersection_number(u, v)


def test_overlay_of_a_curve_with_itself_reduces_to_disjoint(torus) -> None:
    u = torus.slope(2, 3)
    reduced = reduce_bigons(overlay(u, u))
    assert reduced.crossings_between(0, 1) == 0
    assert not find_bigons(reduced)


def test_twisted_pair_has_bigons_until_reduced(genus2) -> None:
    u = apply(dehn_twist(genus2.curve("beta_1"), 2), genus2.curve("alpha_1"))
    v = genus2.curve("beta_1")
    start = overlay(u, v)
    reduced = reduce_bigons(start)
    assert reduced.crossings_between(0, 1) == intersection_number(u, v) == 1
    if start.crossings_between(0, 1) > 1:
        assert find_bigons(start)


@pytest.mark.slow
@pytest.mark.parametrize("surface", ["sphere5", "genus2"])
def test_bigon_reduction_agrees_on_many_pairs(request, surface) -> None:
    std = request.getfixturevalue(surface)
    curves = random_admissible(std, 400, seed=2024)
    for u, v in zip(curves[::2], curves[1::2]):
        assert intersection_number(u, v) == _bigon_free_crossings(u, v)
