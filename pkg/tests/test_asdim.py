from __future__ import annotations

from dataclasses import replace

import networkx as nx
import pytest

from arcmodel.analysis.asdim import asdim_lower_bound, dimension_at_scale, genus_bound
from arcmodel.analysis.witnesses import UNREFUTED, witness_reports
from arcmodel.core.model import build_ball
from arcmodel.models.manifest import Manifest
from arcmodel.ui.cli_helpers import load_manifest, prepare


def _unit(graph: nx.Graph) -> nx.Graph:
    nx.set_edge_attributes(graph, 1, "length")
    return graph


def test_genus_bounds() -> None:
    assert genus_bound(1, -1) == 1
    assert genus_bound(2, -3) == 3
    assert genus_bound(0, -2) == 1


def test_bound_from_delta_alone(small_setup, small_ball) -> None:
    delta, _, _ = small_setup
    report = asdim_lower_bound(small_ball, [delta], delta)
    assert report.rank == 1
    assert report.hyperbolic_criterion
    assert report.genus_bounds == {"delta": 1}
    assert report.bound == 1


def test_no_witnesses_no_bound(genus2, small_setup, small_ball) -> None:
    delta, _, _ = small_setup
    report = asdim_lower_bound(small_ball, [genus2.handle(2)], delta)
    assert report.bound == 0
    assert report.certificates == []


def test_unrefuted_witnesses_do_not_block_the_genus_bound(genus2, small_setup, small_ball) -> None:
    delta, _, _ = small_setup
    candidates = [delta, genus2.handle(2)]
    reports = witness_reports(candidates, small_ball, delta)
    reports[1] = replace(reports[1], status=UNREFUTED)
    report = asdim_lower_bound(small_ball, candidates, delta, reports)
    assert report.rank == 2
    assert report.hyperbolic_criterion
    assert [c.kind for c in report.certificates] == ["disjoint-witnesses", "genus-bound"]
    assert report.bound == 2


def test_genus_two_witness_bound() -> None:
    manifest = Manifest.model_validate({
        "name": "genus3-delta",
        "exhaustion": {"max_genus": 3},
        "level": 2,
        "delta": "handles:2",
        "build": {"radius": 0, "stab_depth": 0},
        "analysis": {"witness_candidates": ["delta"]},
    })
    context = prepare(manifest)
    m = build_ball(context.mu, context.generators, 0, 0, context.base_subsurface)
    report = asdim_lower_bound(m, context.candidates(), context.delta)
    assert report.genus_bounds == {"delta": 3}
    assert report.bound == 3


@pytest.mark.parametrize("genus", [2, 3, pytest.param(4, marks=pytest.mark.slow)])
def test_rank_manifests(manifest_path, genus) -> None:
    context = prepare(load_manifest(str(manifest_path(f"rank-genus{genus}"))))
    build = context.manifest.build
    m = build_ball(context.mu, context.generators, build.radius, build.stab_depth, context.base_subsurface)
    report = asdim_lower_bound(m, context.candidates(), context.delta)
    assert report.rank == genus - 1


def test_dimension_of_a_point() -> None:
    graph = nx.Graph()
    graph.add_node(0)
    result = dimension_at_scale(graph, 1.0)
    assert result.value == 0 and result.exact


def test_dimension_of_short_and_long_paths() -> None:
    assert dimension_at_scale(_unit(nx.path_graph(3)), 2.0).value == 0
    long = dimension_at_scale(_unit(nx.path_graph(10)), 2.0)
    assert long.value == 1 and long.exact
    assert all(len(block) <= 3 for block in long.blocks)


def test_greedy_fallback_is_an_upper_bound() -> None:
    result = dimension_at_scale(_unit(nx.path_graph(12)), 2.0, exact_limit=5)
    assert not result.exact
    assert result.value >= 1
    assert result.to_dict()["upper_bound"]


def test_scale_must_be_positive() -> None:
    with pytest.raises(ValueError):
        dimension_at_scale(_unit(nx.path_graph(2)), 0)


@pytest.mark.slow
def test_dimension_of_a_grid() -> None:
    grid = nx.convert_node_labels_to_integers(_unit(nx.grid_2d_graph(5, 5)))
    result = dimension_at_scale(grid, 2.0)
    assert result.exact
    assert 1 <= result.value <= 2
