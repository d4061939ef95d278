from __future__ import annotations

import random

import pytest

from arcmodel.core.complement import ComplementaryRegions
from arcmodel.core.curves import NormalMultiCurve
from arcmodel.core.embedding import realize
from arcmodel.core.mcg import MappingClass, apply, dehn_twist
from arcmodel.core.subsurface import (
    DISJOINT,
    EQUAL,
    INSIDE,
    SubsurfaceSpec,
    contains,
    essential_intersection_check,
    relative_position,
    subsurface_cut,
)
from arcmodel.errors import InvalidSubsurface, NotInProjectionDomain


def _c_curve(std):
    return std.curve(next(n for n in std.names() if n.startswith("c_")))


def test_handles_are_one_holed_tori(genus2) -> None:
    for k in (1, 2):
        W = genus2.handle(k)
        assert W.is_connected
        assert W.genus == 1
        assert W.euler_characteristic == -1
        assert W.is_farey_type()


def test_relative_positions(genus2) -> None:
    h1, h2 = genus2.handle(1), genus2.handle(2)
    whole = SubsurfaceSpec.whole_surface(genus2.triangulation)
    assert relative_position(h1, h2) == DISJOINT
    assert relative_position(h1, whole) == INSIDE
    assert relative_position(h1, genus2.handles(1)) == EQUAL
    assert contains(whole, h2)
    assert not contains(h1, h2)


def test_pants_side_is_rejected(sphere5) -> None:
    c = _c_curve(sphere5)
    count = ComplementaryRegions(realize(c)).count
    valid, rejected = [], []
    for region in range(count):
        try:
            valid.append(SubsurfaceSpec(c, [region]))
        except InvalidSubsurface:
            rejected.append(region)
    assert len(valid) == 1 and len(rejected) == 1
    assert valid[0].is_farey_type()


def test_boundary_must_be_essential(torus) -> None:
    with pytest.raises(InvalidSubsurface):
        SubsurfaceSpec(NormalMultiCurve((2, 2, 2), torus.triangulation), [0])


def test_containing_rejects_crossing_side_curve(genus2) -> None:
    with pytest.raises(InvalidSubsurface):
        SubsurfaceSpec.containing(genus2.curve("s_1"), genus2.curve("gamma_1"))


def test_curves_inside_a_handle(genus2) -> None:
    h1 = genus2.handle(1)
    inside = genus2.curves_inside(h1)
    assert "alpha_1" in inside and "beta_1" in inside
    assert "alpha_2" not in inside
    assert "s_1" not in inside
    assert h1.fills_with([genus2.curve("alpha_1"), genus2.curve("beta_1")])
    assert not h1.fills_with([genus2.curve("alpha_1")])


def test_essential_intersection(genus2) -> None:
    h1 = genus2.handle(1)
    assert essential_intersection_check([genus2.curve("gamma_1")], h1)
    assert essential_intersection_check([genus2.curve("alpha_1")], h1)
    assert not essential_intersection_check([genus2.curve("alpha_2"), genus2.curve("s_1")], h1)


def test_projection_of_curves_inside(genus2) -> None:
    h1 = genus2.handle(1)
    rho = subsurface_cut([genus2.curve("alpha_1"), genus2.curve("alpha_2")], h1)
    assert rho.curves == (genus2.curve("alpha_1").coords,)
    assert not rho.arcs
    assert [c.coords for c in rho.shadows()] == [genus2.curve("alpha_1").coords]


def test_projection_of_crossing_curve_is_arcs(genus2) -> None:
    rho = subsurface_cut(genus2.curve("gamma_1"), genus2.handle(1))
    assert len(rho.arcs) == 1 and not rho.curves
    # gamma_1 misses alpha_1, so its arc in the handle does too.
    assert [c.coords for c in rho.shadows()] == [genus2.curve("alpha_1").coords]


def _projection_image(f, rho):
    return (
        len(rho.arcs),
        sorted(apply(f, NormalMultiCurve(c, rho.subsurface.triangulation)).coords for c in rho.curves),
        sorted(apply(f, s).coords for s in rho.shadows()),
    )


def _projection_form(rho):
    return (len(rho.arcs), sorted(rho.curves), sorted(s.coords for s in rho.shadows()))


def test_projection_is_equivariant_for_maps_supported_inside(genus2) -> None:
    h1 = genus2.handle(1)
    f = dehn_twist(genus2.curve("alpha_1")) * dehn_twist(genus2.curve("beta_1"), -2)
    u = [genus2.curve(n) for n in ("alpha_1", "beta_1", "alpha_2")]
    image = subsurface_cut([apply(f, x) for x in u], h1)
    expected = sorted(apply(f, genus2.curve(n)).coords for n in ("alpha_1", "beta_1"))
    assert list(image.curves) == expected

    crossing = genus2.curve("gamma_1")
    before = subsurface_cut(crossing, h1)
    for exponent in (-1, 1, 2):
        after = subsurface_cut(apply(dehn_twist(genus2.curve("beta_1"), exponent), crossing), h1)
        assert len(after.arcs) == len(before.arcs) == 1


@pytest.mark.parametrize("name", ["gamma_1", "beta_2"])
def test_projection_commutes_with_random_words_in_the_handle(genus2, name) -> None:
    h1 = genus2.handle(1)
    letters = [dehn_twist(genus2.curve(c), e) for c in ("alpha_1", "beta_1") for e in (1, -1)]
    rng = random.Random(11)
    u = genus2.curve(name)
    if name == "beta_2":
        u = apply(dehn_twist(genus2.curve("gamma_1")), u)
    rho = subsurface_cut(u, h1)
    assert rho.arcs
    for _ in range(50):
        f = MappingClass.identity(genus2.triangulation)
        for _ in range(rng.randint(1, 4)):
            f = f * rng.choice(letters)
        assert _projection_form(subsurface_cut(apply(f, u), h1)) == _projection_image(f, rho)


def test_projection_outside_domain(genus2) -> None:
    with pytest.raises(NotInProjectionDomain):
        subsurface_cut([genus2.curve("alpha_2")], genus2.handle(1))


def test_whole_surface_projection_is_the_collection(genus2) -> None:
    whole = SubsurfaceSpec.whole_surface(genus2.triangulation)
    u = [genus2.curve("alpha_1"), genus2.curve("gamma_1")]
    rho = subsurface_cut(u, whole)
    assert set(rho.curves) == {c.coords for c in u}
    assert not rho.arcs
