from __future__ import annotations

import pytest

from arcmodel.analysis.farey import (
    INFINITY,
    bounded_farey_distances,
    curve_graph_bounds,
    farey_chart,
    farey_distance,
    format_slope,
    ladder,
    parse_slope,
    slope,
)
from arcmodel.core.subsurface import SubsurfaceSpec


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ((0, 1), (0, 1), 0),
        ((0, 1), (1, 0), 1),
        ((0, 1), (1, 1), 1),
        ((0, 1), (2, 1), 2),
        ((1, 0), (5, 7), 3),
        ((1, 2), (-1, 2), 2),
        ((3, 5), (3, 5), 0),
    ],
)
def test_known_distances(a, b, expected) -> None:
    assert farey_distance(a, b) == expected
    assert farey_distance(b, a) == expected


def test_slope_normalization() -> None:
    assert slope(2, -4) == (-1, 2)
    assert slope(-3, 0) == INFINITY
    assert parse_slope("inf") == INFINITY
    assert parse_slope("-6/4") == (-3, 2)
    assert format_slope(parse_slope("7")) == "7/1"
    with pytest.raises(ValueError):
        slope(0, 0)


def test_ladder_descends_to_the_slope() -> None:
    steps = ladder((3, 5))
    assert steps[0] == INFINITY
    assert steps[-1] == (3, 5)
    assert ladder((2, 1)) == [INFINITY, (2, 1)]


def _slopes_in_unit_interval(bound: int) -> list:
    return sorted({slope(p, q) for q in range(1, bound + 1) for p in range(-q, q + 1)})


def test_matches_bounded_search() -> None:
    oracle = bounded_farey_distances(8)
    slopes = _slopes_in_unit_interval(8)
    for a in slopes:
        for b in slopes:
            assert farey_distance(a, b) == oracle[a][b]


@pytest.mark.slow
def test_matches_bounded_search_to_thirty() -> None:
    oracle = bounded_farey_distances(30)
    slopes = [s for s in _slopes_in_unit_interval(30) if s[0] >= 0]
    for a in slopes:
        for b in slopes:
            assert farey_distance(a, b) == oracle[a][b]


def test_chart_on_the_punctured_torus(torus) -> None:
    chart = farey_chart(SubsurfaceSpec.whole_surface(torus.triangulation))
    assert chart is not None
    slopes = [(0, 1), (1, 0), (1, 1), (-1, 1), (2, 3), (-3, 4), (5, 2)]
    for a in slopes:
        for b in slopes:
            assert chart.distance(torus.slope(*a), torus.slope(*b)) == farey_distance(a, b)


def test_chart_on_a_handle(genus2) -> None:
    chart = farey_chart(genus2.handle(1))
    assert chart is not None
    assert chart.distance(genus2.curve("alpha_1"), genus2.curve("beta_1")) == 1
    assert farey_chart(SubsurfaceSpec.whole_surface(genus2.triangulation)) is None


def test_curve_graph_bounds(genus2) -> None:
    c = genus2.curve
    assert curve_graph_bounds(c("alpha_1"), c("alpha_1")) == (0, 0)
    assert curve_graph_bounds(c("alpha_1"), c("alpha_2")) == (1, 1)
    assert curve_graph_bounds(c("alpha_1"), c("beta_1")) == (2, 2)
    lower, upper = curve_graph_bounds(c("s_1"), c("gamma_1"))
    assert lower == 2 and upper >= lower
