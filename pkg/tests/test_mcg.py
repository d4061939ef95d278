from __future__ import annotations

import random

import pytest

from arcmodel.core.curves import NormalMultiCurve
from arcmodel.core.intersection import intersection_number
from arcmodel.core.mcg import MappingClass, apply, dehn_twist, induced_permutation, is_identity, stabilizes, words
from arcmodel.errors import NotConnected, NotEssential, SurfaceMismatch

from conftest import random_admissible


def _twists(std, names):
    return {n: dehn_twist(std.curve(n), 1, n) for n in names}


def test_composition_applies_right_to_left(genus2) -> None:
    T = _twists(genus2, ["alpha_1", "beta_1", "gamma_1"])
    u = genus2.curve("beta_2")
    f, g = T["beta_1"] * T["gamma_1"], T["alpha_1"] ** -2
    assert apply(f * g, u) == apply(f, apply(g, u))


def test_inverse_undoes_the_word(genus2) -> None:
    T = _twists(genus2, ["alpha_1", "beta_1", "gamma_1", "beta_2"])
    f = T["alpha_1"] * T["gamma_1"] ** 2 * T["beta_2"] ** -1 * T["beta_1"]
    for name in genus2.names():
        curve = genus2.curve(name)
        assert apply(f.inverse(), apply(f, curve)) == curve
    assert is_identity(f * f.inverse())


def test_twist_fixes_disjoint_curves_and_moves_crossing_ones(genus2) -> None:
    T = dehn_twist(genus2.curve("alpha_1"))
    assert apply(T, genus2.curve("alpha_2")) == genus2.curve("alpha_2")
    assert apply(T, genus2.curve("alpha_1")) == genus2.curve("alpha_1")
    assert apply(T, genus2.curve("beta_1")) != genus2.curve("beta_1")


def test_twist_intersection_formula(torus) -> None:
    a = torus.slope(0, 1)
    for x in [(1, 0), (2, 3), (-1, 4)]:
        b = torus.slope(*x)
        for k in (1, 2, -3):
            image = apply(dehn_twist(a, k), b)
            assert intersection_number(image, b) == abs(k) * intersection_number(a, b) ** 2


def test_twist_inequality_on_genus_two(genus2) -> None:
    names = ["alpha_1", "beta_1", "gamma_1", "beta_2", "s_1"]
    for a in names:
        T = dehn_twist(genus2.curve(a), 2)
        for b in names:
            for c in names:
                u, v = genus2.curve(b), genus2.curve(c)
                lhs = intersection_number(apply(T, u), v)
                expected = 2 * intersection_number(genus2.curve(a), u) * intersection_number(genus2.curve(a), v)
                assert abs(lhs - expected) <= intersection_number(u, v)


def test_action_preserves_intersection(genus2) -> None:
    T = _twists(genus2, ["alpha_1", "beta_1", "gamma_1", "beta_2", "alpha_2"])
    f = T["beta_1"] * T["gamma_1"] ** -1 * T["alpha_2"] * T["beta_2"]
    names = ["alpha_1", "beta_1", "gamma_1", "s_1", "s_2"]
    for a in names:
        for b in names:
            u, v = genus2.curve(a), genus2.curve(b)
            assert intersection_number(apply(f, u), apply(f, v)) == intersection_number(u, v)


def test_braid_relation_is_trivial(torus) -> None:
    Ta, Tb = dehn_twist(torus.slope(0, 1)), dehn_twist(torus.slope(1, 0))
    assert is_identity(Ta * Tb * Ta * (Tb * Ta * Tb).inverse())
    assert not is_identity(Ta * Tb)


def test_hyperelliptic_involution_is_detected(torus) -> None:
    Ta, Tb = dehn_twist(torus.slope(0, 1)), dehn_twist(torus.slope(1, 0))
    assert not is_identity((Ta * Tb) ** 3)
    assert is_identity((Ta * Tb) ** 6)


def test_twist_curve_must_be_connected_and_essential(torus) -> None:
    with pytest.raises(NotConnected):
        dehn_twist(torus.slope(0, 1).scaled(2))
    with pytest.raises(NotEssential):
        dehn_twist(NormalMultiCurve((2, 2, 2), torus.triangulation))


def test_apply_rejects_foreign_curves(torus, genus2) -> None:
    with pytest.raises(SurfaceMismatch):
        apply(dehn_twist(genus2.curve("alpha_1")), torus.slope(0, 1))
    with pytest.raises(SurfaceMismatch):
        dehn_twist(genus2.curve("alpha_1")) * dehn_twist(torus.slope(0, 1))


def test_stabilizers_permute_components(genus2) -> None:
    mu = [genus2.curve("alpha_1"), genus2.curve("alpha_2"), genus2.curve("s_1")]
    T = dehn_twist(genus2.curve("alpha_2"))
    assert stabilizes(T, mu)
    assert induced_permutation(T, mu) == (0, 1, 2)
    assert not stabilizes(dehn_twist(genus2.curve("beta_1")), mu)
    assert induced_permutation(dehn_twist(genus2.curve("beta_1")), mu) is None


def test_words_are_freely_reduced(torus) -> None:
    letters = [dehn_twist(torus.slope(0, 1)).letters[0], dehn_twist(torus.slope(1, 0)).letters[0]]
    found = words(letters, 2)
    assert len(found) == 1 + 4 + 4 * 3
    assert all(w[i] != w[i + 1].inverse() for w in found for i in range(len(w) - 1))
    assert MappingClass(torus.triangulation, found[0]).length == 0


HANDLE_TWISTS = {"torus": ["alpha_1", "beta_1"], "genus2": ["alpha_1", "beta_1", "alpha_2", "beta_2"]}


def _random_word(rng: random.Random, letters: list, max_length: int):
    f = letters[0] ** 0
    for _ in range(rng.randint(1, max_length)):
        f = f * rng.choice(letters) ** rng.choice((1, -1))
    return f


def _action_cases(std, names, count, seed, max_length, max_coord):
    """(f, g, u, v) with f, g random twist words and u, v random multicurves."""
    rng = random.Random(seed)
    letters = list(_twists(std, names).values())
    curves = random_admissible(std, 2 * count, seed, max_coord)
    return [(_random_word(rng, letters, max_length), _random_word(rng, letters, max_length),
             curves[2 * k], curves[2 * k + 1]) for k in range(count)]


def test_random_words_compose_and_invert_on_the_torus(torus) -> None:
    for f, g, u, _ in _action_cases(torus, HANDLE_TWISTS["torus"], 100, 3, 8, 4):
        assert apply(f * g, u) == apply(f, apply(g, u))
        assert apply(f.inverse(), apply(f, u)) == u


def test_random_short_words_preserve_intersection(torus, genus2) -> None:
    for std in (torus, genus2):
        names = HANDLE_TWISTS["torus" if std is torus else "genus2"]
        for f, _, u, v in _action_cases(std, names, 30, 17, 3, 3):
            assert intersection_number(apply(f, u), apply(f, v)) == intersection_number(u, v)


@pytest.mark.parametrize("surface", ["torus", "genus2"])
def test_random_twist_inequality(surface, request) -> None:
    std = request.getfixturevalue(surface)
    rng = random.Random(23)
    names = HANDLE_TWISTS[surface]
    curves = random_admissible(std, 100, 23, 4)
    for k in range(50):
        c = std.curve(rng.choice(names))
        n = rng.choice((-5, -4, -3, -2, -1, 1, 2, 3, 4, 5))
        u, v = curves[2 * k], curves[2 * k + 1]
        lhs = intersection_number(apply(dehn_twist(c, n), u), v)
        expected = abs(n) * intersection_number(c, u) * intersection_number(c, v)
        assert abs(lhs - expected) <= intersection_number(u, v)


@pytest.mark.slow
@pytest.mark.parametrize("surface", ["torus", "genus2"])
def test_random_action_laws(surface, request) -> None:
    std = request.getfixturevalue(surface)
    for f, g, u, v in _action_cases(std, HANDLE_TWISTS[surface], 100, 41, 8, 6):
        assert apply(f * g, u) == apply(f, apply(g, u))
        assert apply(f.inverse(), apply(f, u)) == u
        assert intersection_number(apply(f, u), apply(f, v)) == intersection_number(u, v)


def _relators(std, rng: random.Random) -> list:
    T = _twists(std, ["alpha_1", "beta_1", "gamma_1", "alpha_2", "beta_2"])
    a1, b1, g1, a2, b2 = (T[n] for n in ["alpha_1", "beta_1", "gamma_1", "alpha_2", "beta_2"])
    base = [
        a1 * b1 * a1 * (b1 * a1 * b1).inverse(),
        b1 * g1 * b1 * (g1 * b1 * g1).inverse(),
        a1 * a2 * a1.inverse() * a2.inverse(),
        b1 * b2 * b1.inverse() * b2.inverse(),
        a1 * g1 * a1.inverse() * g1.inverse(),
    ]
    letters = list(T.values())
    found = list(base)
    for r in base:
        g = _random_word(rng, letters, 4)
        found.append(g * r * g.inverse())
    for _ in range(3):
        f = _random_word(rng, letters, 6)
        found.append(f * f.inverse())
    return found


def test_identity_words_fix_random_multicurves(genus2) -> None:
    rng = random.Random(5)
    curves = random_admissible(genus2, 10, 5, 6)
    for r in _relators(genus2, rng):
        assert is_identity(r)
        for u in curves:
            assert apply(r, u) == u


def test_non_identity_words_move_the_alexander_system(genus2) -> None:
    T = _twists(genus2, ["alpha_1", "beta_1", "alpha_2"])
    for f in (T["alpha_1"], T["alpha_1"] * T["alpha_2"] ** -1, T["alpha_1"] * T["beta_1"]):
        assert not is_identity(f)
