from __future__ import annotations

import pytest

from arcmodel.core.complement import is_filling
from arcmodel.core.intersection import intersection_number
from arcmodel.core.registry import StandardSurface, build_standard_triangulation, standard_surface
from arcmodel.core.surface import IdealTriangulation, SurfaceType, flip, flip_inverse, flip_sequence, transport
from arcmodel.errors import TriangulationMismatch, UnflippableEdge, UnsupportedSurface


def test_euler_counts_of_standard_triangulations(torus, genus2, sphere5) -> None:
    for std in (torus, genus2, sphere5):
        s = std.surface
        t = std.triangulation
        assert t.edge_count == s.expected_edges == -3 * s.euler_characteristic
        assert t.triangle_count == s.expected_triangles == -2 * s.euler_characteristic
        assert t.vertex_count == s.punctures


def test_surfaces_without_triangulation_are_rejected() -> None:
    with pytest.raises(UnsupportedSurface):
        standard_surface(SurfaceType(1, 0))
    with pytest.raises(UnsupportedSurface):
        standard_surface(SurfaceType(0, 2))


def test_triangles_are_validated() -> None:
    with pytest.raises(ValueError):
        IdealTriangulation(((0, 1, 2), (~0, ~1, 3)), ("a", "b", "c", "d"))


def test_self_folded_edge_is_unflippable() -> None:
    t = IdealTriangulation(((0, ~0, 1), (~1, 2, ~2)), ("a", "b", "c"))
    assert not t.is_flippable(0)
    with pytest.raises(UnflippableEdge):
        flip(t, 0)


def test_flip_inverse_restores_triangulation(genus2) -> None:
    t = genus2.triangulation
    for edge in range(t.edge_count):
        restored, m = flip_inverse(t, edge)
        assert restored.identifier == t.identifier
        for name in ("alpha_1", "gamma_1", "s_1"):
            assert transport(genus2.curve(name), m).coords == genus2.curve(name).coords


def _flippable_walk(t, edges):
    current = t
    word = []
    for edge in edges:
        if current.is_flippable(edge):
            current, _ = flip(current, edge)
            word.append(edge)
    return flip_sequence(t, word)


def test_flip_round_trip_transports_back(genus2) -> None:
    t = genus2.triangulation
    flipped, m = _flippable_walk(t, [0, 3, 5, 0])
    assert m.target.identifier == flipped.identifier
    for name in genus2.names():
        curve = genus2.curve(name)
        there = transport(curve, m)
        assert transport(there, m.inverse()).coords == curve.coords


def test_intersection_is_invariant_under_flips(genus2) -> None:
    flipped, m = _flippable_walk(genus2.triangulation, [1, 4, 2])
    names = ["alpha_1", "beta_1", "gamma_1", "beta_2", "s_1", "level_1"]
    for a in names:
        for b in names:
            u, v = genus2.curve(a), genus2.curve(b)
            assert intersection_number(transport(u, m), transport(v, m)) == intersection_number(u, v)


def test_transport_needs_the_source_triangulation(torus, genus2) -> None:
    _, m = flip(genus2.triangulation, 0)
    with pytest.raises(TriangulationMismatch):
        transport(torus.curve("slope_0_1"), m)


def test_standard_triangulation_is_deterministic() -> None:
    s = SurfaceType(2, 1)
    t = build_standard_triangulation(s)
    assert StandardSurface(s).triangulation.identifier == t.identifier
    assert t.surface == s


def test_filling_systems(genus2) -> None:
    t = genus2.triangulation
    chain = [genus2.curve(name) for name in genus2.lickorish_names()]
    assert is_filling(chain, t)
    assert not is_filling(genus2.curve("alpha_1"), t)
    assert not is_filling([], t)
    assert not genus2.curve("alpha_1").is_peripheral
