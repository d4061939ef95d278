from __future__ import annotations

import random
from pathlib import Path

import pytest

from arcmodel.core.curves import NormalMultiCurve, is_admissible
from arcmodel.core.exhaustion import Exhaustion
from arcmodel.core.model import build_ball, choose_base_vertex, dehn_lickorish_generators
from arcmodel.core.registry import StandardSurface, standard_surface
from arcmodel.core.surface import SurfaceType

MANIFEST_DIR = Path(__file__).resolve().parents[1] / "arcmodel" / "manifests"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


def random_admissible(std: StandardSurface, count: int, seed: int, max_coord: int = 50) -> list[NormalMultiCurve]:
    """Uniform random admissible coordinate vectors with entries <= max_coord."""
    rng = random.Random(seed)
    t = std.triangulation
    found = []
    while len(found) < count:
        coords = [rng.randint(0, max_coord) for _ in range(t.edge_count)]
        if any(coords) and is_admissible(t, coords):
            found.append(NormalMultiCurve(tuple(coords), t))
    return found


@pytest.fixture(scope="session")
def torus() -> StandardSurface:
    return standard_surface(SurfaceType(1, 1))


@pytest.fixture(scope="session")
def genus2() -> StandardSurface:
    return standard_surface(SurfaceType(2, 1))


@pytest.fixture(scope="session")
def sphere5() -> StandardSurface:
    return standard_surface(SurfaceType(0, 5))


@pytest.fixture(scope="session")
def exhaustion2() -> Exhaustion:
    return Exhaustion(max_genus=2, punctures=1)


@pytest.fixture(scope="session")
def small_setup(exhaustion2: Exhaustion):
    """Genus-2 level with Humphries generators and the Delta-filling base vertex."""
    delta = exhaustion2.delta(1)
    mu = choose_base_vertex(delta)
    Z = dehn_lickorish_generators(exhaustion2, 1, "humphries", base=mu)
    return delta, mu, Z


@pytest.fixture(scope="session")
def small_ball(small_setup):
    delta, mu, Z = small_setup
    return build_ball(mu, Z, 3, 1, delta)


@pytest.fixture
def manifest_path():
    def _path(name: str) -> Path:
        return MANIFEST_DIR / f"{name}.json"

    return _path
