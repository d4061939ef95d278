"""
Compact exhaustions by standard surfaces.

Level n is the standard surface of genus ``n + 1`` with a fixed number of
punctures. Level n sits in level n + 1 as the subsurface of its first
``n + 1`` handles, bounded by ``level_(n+1)``; in the ambient infinite-genus
surface every such boundary is essential.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from arcmodel.core.curves import NormalMultiCurve, Walk
from arcmodel.core.intersection import intersection_number
from arcmodel.core.registry import StandardSurface, standard_surface
from arcmodel.core.subsurface import SubsurfaceSpec
from arcmodel.core.surface import IdealTriangulation, SurfaceType

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LevelEmbedding:
    """
    Inclusion of one level into the next as its first handles.

    Every edge keeps its label one level up. The last fan triangle
    (d_(4g-2), ~a_g, ~b_g) is the only one that grows: one level up it is cut
    by the new diagonal d_(4g-1), which a walk crosses when it turns between
    the two halves.
    """
    lower: IdealTriangulation
    upper: IdealTriangulation
    sides: Dict[int, int]

    @classmethod
    def between(cls, lower: IdealTriangulation, upper: IdealTriangulation) -> "LevelEmbedding":
        sides = {}
        for e, label in enumerate(lower.labels):
            f = upper.labels.index(label)
            sides[e], sides[~e] = f, ~f
        return cls(lower, upper, sides)

    def _bridge(self, entry: int, exit_: int) -> List[int]:
        t = self.upper
        here, there = t.side_index[entry][0], t.side_index[exit_][0]
        if here == there:
            return []
        for side in t.triangles[here]:
            if t.side_index[~side][0] == there:
                return [side]
        raise ValueError(f"sides {entry} and {exit_} are not in adjacent triangles")

    def apply_walk(self, walk: Sequence[int]) -> Walk:
        out: List[int] = []
        for k, side in enumerate(walk):
            exit_ = self.sides[side]
            out.extend(self._bridge(self.sides[~walk[k - 1]], exit_))
            out.append(exit_)
        return tuple(out)

    def apply(self, u: NormalMultiCurve) -> NormalMultiCurve:
        """Image of a multicurve of the lower level."""
        if u.triangulation_id != self.lower.identifier:
            raise ValueError("curve does not live on the lower level")
        image = NormalMultiCurve.empty(self.upper)
        for walk, mult in u.components:
            image = image + NormalMultiCurve.from_walk(self.upper, self.apply_walk(walk)).scaled(mult)
        return image

@dataclass
class Level:
    """One truncation Sigma_n of the exhaustion."""
    index: int
    surface: SurfaceType
    standard: StandardSurface
    # Inclusion into the next level, None at the last level.
    embedding: Optional[LevelEmbedding] = None
    boundary_essential: bool = True

    @property
    def triangulation(self) -> IdealTriangulation:
        return self.standard.triangulation

    @property
    def genus(self) -> int:
        return self.surface.genus


class Exhaustion:
    """
    A finite run of the exhaustion Sigma_0 < Sigma_1 < ... of an infinite-genus surface.

    Args:
        max_genus: Genus of the last level
        punctures: Punctures of every level
    """

    def __init__(self, max_genus: int = 4, punctures: int = 1):
        if max_genus < 1:
            raise ValueError("an exhaustion needs at least one level")
        self.punctures = punctures
        self.levels: List[Level] = []
        for n in range(max_genus):
            s = SurfaceType(n + 1, punctures)
            std = standard_surface(s)
            self.levels.append(Level(n, s, std))
        for lower, upper in zip(self.levels, self.levels[1:]):
            lower.embedding = LevelEmbedding.between(lower.triangulation, upper.triangulation)
        logger.info(f"Exhaustion with {len(self.levels)} levels up to {self.levels[-1].surface.label}")

    def __len__(self) -> int:
        return len(self.levels)

    def level(self, n: int) -> Level:
        if not 0 <= n < len(self.levels):
            raise IndexError(f"level {n} is outside the exhaustion (0..{len(self.levels) - 1})")
        return self.levels[n]

    @property
    def boundary_essentiality(self) -> List[bool]:
        return [lvl.boundary_essential for lvl in self.levels]

    def delta(self, n: int) -> SubsurfaceSpec:
        """Delta = Sigma_0, the first handle torus, as a subsurface of level n."""
        std = self.level(n).standard
        if n == 0:
            return SubsurfaceSpec.whole_surface(std.triangulation, name="delta")
        spec = std.handle(1)
        return SubsurfaceSpec(spec.boundary, spec.regions, name="delta")

    def twist_curves(self, n: int) -> List[str]:
        """Registered twist curves of level n."""
        return self.level(n).standard.lickorish_names()

    def inner_boundary(self, n: int) -> Optional[str]:
        """Name, at level n + 1, of the boundary of Sigma_n."""
        if n + 1 >= len(self.levels):
            return None
        return f"level_{self.levels[n].genus}"

    def enumerated_curves(self, n: int, selection: str = "lickorish") -> List[str]:
        """Twist curves up to level n in enumeration order (first level of appearance, then registry order)."""
        if selection == "humphries":
            return self.level(n).standard.humphries_names()
        names: List[str] = []
        for m in range(n + 1):
            for name in self.twist_curves(m):
                if name not in names:
                    names.append(name)
        return names

    def include(self, n: int, u: NormalMultiCurve) -> NormalMultiCurve:
        """Image at level n + 1 of a multicurve of level n."""
        embedding = self.level(n).embedding
        if embedding is None:
            raise IndexError(f"level {n} is the last level of the exhaustion")
        return embedding.apply(u)

    def check_nesting(self) -> List[str]:
        """Nesting failures, empty when the inclusion of every level carries each
        twist curve onto its namesake one level up, away from the inner boundary."""
        failures = []
        for n in range(len(self.levels) - 1):
            lower, upper = self.levels[n].standard, self.levels[n + 1].standard.curves
            boundary = upper.get(self.inner_boundary(n))
            if boundary is None:
                failures.append(f"level {n}: {self.inner_boundary(n)}")
            for name in self.twist_curves(n):
                image = self.include(n, lower.curve(name))
                if name not in upper:
                    failures.append(f"level {n}: {name}")
                elif image != upper[name]:
                    failures.append(f"level {n}: {name} lands on {image.coords}")
                elif boundary is not None and intersection_number(image, boundary):
                    failures.append(f"level {n}: {name} crosses {self.inner_boundary(n)}")
        return failures

    def to_dict(self) -> Dict:
        return {
            "punctures": self.punctures,
            "levels": [
                {
                    "index": lvl.index,
                    "surface": lvl.surface.to_dict(),
                    "triangulation": lvl.triangulation.identifier,
                    "boundary_essential": lvl.boundary_essential,
                }
                for lvl in self.levels
            ],
        }
