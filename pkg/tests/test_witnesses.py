from __future__ import annotations

from arcmodel.analysis.witnesses import (
    CERTIFIED,
    REFUTED,
    UNREFUTED,
    disjoint_witness_family,
    disjoint_witness_rank,
    disjointness_graph,
    is_witness,
)
from arcmodel.core.subsurface import SubsurfaceSpec, essential_intersection_check


def test_delta_is_certified(small_setup, small_ball) -> None:
    delta, _, _ = small_setup
    report = is_witness(delta, small_ball, delta)
    assert report.status == CERTIFIED
    assert report.accepted and report.certified


def test_whole_surface_is_certified(genus2, small_setup, small_ball) -> None:
    delta, _, _ = small_setup
    whole = SubsurfaceSpec.whole_surface(genus2.triangulation, name="whole")
    assert is_witness(whole, small_ball, delta).status == CERTIFIED


def test_subsurface_missed_by_the_base_is_refuted(genus2, small_setup, small_ball) -> None:
    delta, _, _ = small_setup
    report = is_witness(genus2.handle(2), small_ball, delta)
    assert report.status == REFUTED
    assert report.counterexample == 0
    assert report.counterexample_digest == small_ball.vertices[0].digest
    assert report.missed_component == 0
    assert not report.accepted


def test_checked_status_without_delta(small_ball) -> None:
    W = SubsurfaceSpec.whole_surface(small_ball.triangulation)
    report = is_witness(W, small_ball)
    assert report.status == UNREFUTED
    assert report.vertices_checked == small_ball.vertex_count
    assert all(essential_intersection_check(v.curves, W) for v in small_ball.vertices)


def test_disjointness_graph(genus2) -> None:
    graph = disjointness_graph([genus2.handle(1), genus2.handle(2), SubsurfaceSpec.whole_surface(genus2.triangulation)])
    assert sorted(graph.edges) == [(0, 1)]


def test_rank_skips_refuted_candidates(genus2, small_setup, small_ball) -> None:
    delta, _, _ = small_setup
    assert disjoint_witness_rank([], small_ball, delta) == 0
    assert disjoint_witness_rank([delta], small_ball, delta) == 1
    family = disjoint_witness_family([delta, genus2.handle(2)], small_ball, delta)
    assert family.rank == 1
    assert family.to_dict()["witnesses"] == ["delta"]


def test_report_serialization(small_setup, small_ball) -> None:
    delta, _, _ = small_setup
    data = is_witness(delta, small_ball, delta).to_dict()
    assert data["subsurface"] == "delta"
    assert data["genus"] == 1
    assert data["euler_characteristic"] == -1
