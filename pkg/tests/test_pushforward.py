from __future__ import annotations

import pytest

from arcmodel.analysis.pushforward import (
    CocompactnessReport,
    cocompactness_growth,
    cocompactness_report,
    lipschitz_violations,
    pushforward_model,
    section_report,
)
from arcmodel.core.intersection import self_intersection
from arcmodel.core.subsurface import SubsurfaceSpec, subsurface_cut
from arcmodel.errors import NotAWitness


def test_pushforward_to_delta_is_one_lipschitz(small_setup, small_ball) -> None:
    delta, _, _ = small_setup
    push = pushforward_model(small_ball, delta, delta)
    assert 1 <= push.vertex_count <= small_ball.vertex_count
    assert sorted(set(push.projection.values())) == list(range(push.vertex_count))
    assert lipschitz_violations(push, small_ball) == []


def test_pushforward_to_whole_surface_is_a_copy(small_setup, small_ball) -> None:
    delta, _, _ = small_setup
    whole = SubsurfaceSpec.whole_surface(small_ball.triangulation, name="whole")
    push = pushforward_model(small_ball, whole, delta)
    assert push.vertex_count == small_ball.vertex_count
    assert push.edge_count == small_ball.edge_count


def test_section_is_a_right_inverse(small_setup, small_ball) -> None:
    delta, _, _ = small_setup
    push = pushforward_model(small_ball, delta, delta)
    report = section_report(push, small_ball)
    for i, v in report.section.items():
        assert push.projection[v] == i
        weights = [small_ball.vertices[u].word_weight for u in push.preimages(i)]
        assert small_ball.vertices[v].word_weight == min(weights)
    assert report.edges_checked == push.edge_count
    assert report.lipschitz >= (1 if push.edge_count else 0)


def test_refuted_subsurface_has_no_pushforward(genus2, small_setup, small_ball) -> None:
    delta, _, _ = small_setup
    with pytest.raises(NotAWitness):
        pushforward_model(small_ball, genus2.handle(2), delta)
    with pytest.raises(NotAWitness):
        cocompactness_report(small_ball, genus2.handle(2), delta)


def test_cocompactness_matches_direct_recomputation(small_setup, small_ball) -> None:
    delta, _, _ = small_setup
    report = cocompactness_report(small_ball, delta, delta)
    direct = [self_intersection(subsurface_cut(v.curves, delta).shadows()) for v in small_ball.vertices]
    assert report.per_vertex == direct
    assert report.per_vertex[0] == 1
    assert report.max_self_intersection == max(direct)


def test_growth_is_flagged() -> None:
    flat = [CocompactnessReport("delta", r, 3, 4) for r in (1, 2, 3)]
    assert not cocompactness_growth(flat)
    assert cocompactness_growth(flat + [CocompactnessReport("delta", 4, 3, 9)])
