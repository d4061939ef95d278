from __future__ import annotations

import pytest

from arcmodel.core.curves import NormalMultiCurve
from arcmodel.core.exhaustion import Exhaustion
from arcmodel.core.intersection import intersection_number
from arcmodel.core.registry import standard_surface, surface_for
from arcmodel.core.surface import IdealTriangulation, SurfaceType
from arcmodel.errors import UnknownCurve, UnsupportedSurface


def test_humphries_chain_is_linear(genus2) -> None:
    chain = genus2.humphries_names()
    assert chain == ["alpha_1", "beta_1", "gamma_1", "beta_2", "alpha_2"]
    curves = [genus2.curve(n) for n in chain]
    for i, a in enumerate(curves):
        for j, b in enumerate(curves):
            if i != j:
                assert intersection_number(a, b) == (1 if abs(i - j) == 1 else 0)


def test_lickorish_names(genus2, sphere5) -> None:
    assert genus2.lickorish_names() == ["alpha_1", "beta_1", "gamma_1", "alpha_2", "beta_2"]
    assert sphere5.lickorish_names()
    assert all(n.startswith("c_") for n in sphere5.lickorish_names())


def test_four_punctured_sphere_names_distinct_curves() -> None:
    std = standard_surface(SurfaceType(0, 4))
    coords = [std.curve(n).coords for n in std.names()]
    assert len(set(coords)) == len(coords)
    twists = [std.curve(n).coords for n in std.lickorish_names()]
    assert twists and len(set(twists)) == len(twists)


def test_registered_curves_are_essential_and_simple(genus2, sphere5) -> None:
    for std in (genus2, sphere5):
        for name in std.names():
            curve = std.curve(name)
            assert curve.is_connected, name
            assert curve.is_essential, name


def test_unknown_names(torus, genus2) -> None:
    with pytest.raises(UnknownCurve):
        genus2.curve("alpha_9")
    assert torus.curve("slope_3_5") == torus.slope(3, 5)
    with pytest.raises(UnsupportedSurface):
        genus2.slope(1, 2)


def test_name_lookup(genus2) -> None:
    assert genus2.name_of(genus2.curve("gamma_1")) == "gamma_1"


def test_surface_for_needs_a_standard_triangulation() -> None:
    t = IdealTriangulation(((0, ~0, 1), (~1, 2, ~2)), ("x", "y", "z"))
    with pytest.raises(UnsupportedSurface):
        surface_for(t)


def test_exhaustion_nests(exhaustion2) -> None:
    assert exhaustion2.check_nesting() == []
    e = Exhaustion(max_genus=3)
    assert e.check_nesting() == []
    assert e.inner_boundary(0) == "level_1"
    assert e.inner_boundary(2) is None
    assert all(e.boundary_essentiality)


def test_level_inclusion_follows_the_polygon_nesting(exhaustion2) -> None:
    lower, upper = exhaustion2.level(0).standard, exhaustion2.level(1).standard
    beta = lower.curve("beta_1")
    assert beta.coords == (0, 1, 1)
    image = exhaustion2.include(0, beta)
    assert image.coords == (0, 1, 0, 0, 1, 1, 0, 0, 0)
    assert image == upper.curve("beta_1")
    # The puncture of level 0 opens up into the inner boundary.
    around_puncture = NormalMultiCurve((2, 2, 2), lower.triangulation)
    assert exhaustion2.include(0, around_puncture) == upper.curve("level_1")
    with pytest.raises(IndexError):
        exhaustion2.include(1, upper.curve("alpha_1"))


def test_nesting_with_extra_punctures() -> None:
    assert Exhaustion(max_genus=2, punctures=2).check_nesting() == []


def test_delta_of_each_level(exhaustion2) -> None:
    assert exhaustion2.delta(0).is_whole_surface
    delta = exhaustion2.delta(1)
    assert delta.name == "delta"
    assert delta.genus == 1 and delta.is_connected


def test_level_out_of_range(exhaustion2) -> None:
    with pytest.raises(IndexError):
        exhaustion2.level(2)
