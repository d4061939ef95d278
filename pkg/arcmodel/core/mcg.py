"""
Mapping classes as words in Dehn twists.

A twist acts on a closed walk by surgery: wherever the walk crosses the twist
curve (a linked run of the two walks) a full loop around the curve is
spliced in, on the side the walk turns to. The result is cyclically reduced,
which is its canonical walk.
"""

import logging
from dataclasses import dataclass, field
from functools import cmp_to_key, lru_cache
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from arcmodel.core.curves import (
    RIGHT,
    NormalMultiCurve,
    Walk,
    cyclically_reduce,
    decompose,
    oriented_form,
    turn,
    walk_coordinates,
)
from arcmodel.core.embedding import compare_exits
from arcmodel.core.intersection import linked_runs
from arcmodel.core.surface import IdealTriangulation
from arcmodel.errors import EmptyGeneratorSet, NotAStabilizer, NotConnected, NotEssential, SurfaceMismatch

logger = logging.getLogger(__name__)


@lru_cache(maxsize=1 << 18)
def twist_walk(t: IdealTriangulation, curve: Walk, exponent: int, walk: Walk) -> Walk:
    """Oriented walk of T_curve^exponent applied to a closed walk.

    Args:
        t: The triangulation
        curve: Walk of the (simple, essential) twist curve
        exponent: Nonzero twist power; positive twists turn toward the right
        walk: The walk to twist

    Returns:
        The cyclically reduced image walk, keeping the orientation of ``walk``
    """
    if not walk or not exponent:
        return walk
    lc = len(curve)
    splices: Dict[int, List[Tuple[Walk, int, List[int]]]] = {}
    for i, j, other, m in linked_runs(t, walk, curve):
        g = (i + m) % len(walk)
        forward = (turn(t, walk, i + m) == RIGHT) == (exponent > 0)
        if forward:
            loop = [other[(j + m + s) % lc] for s in range(lc)]
        else:
            loop = [~other[(j + m - 1 - s) % lc] for s in range(lc)]
        splices.setdefault(g, []).append((other, (j + m - 1) % lc, loop * abs(exponent)))
    result: List[int] = []
    for k, side in enumerate(walk):
        for loop in _ordered_loops(t, walk, k, splices.get(k, [])):
            result.extend(loop)
        result.append(side)
    return cyclically_reduce(result)


def _ordered_loops(t: IdealTriangulation, walk: Walk, g: int, entries) -> List[List[int]]:
    """Order the loops spliced at one position by the crossing order along the walk."""
    if len(entries) < 2:
        return [loop for _, _, loop in entries]

    def cmp(x, y):
        return compare_exits(t, x[0], x[1], y[0], y[1])

    ordered = sorted(entries, key=cmp_to_key(cmp))
    if turn(t, walk, g) != RIGHT:
        ordered.reverse()
    return [loop for _, _, loop in ordered]


@dataclass(frozen=True)
class Twist:
    """One letter of a twist word."""
    curve: NormalMultiCurve
    exponent: int
    name: Optional[str] = field(default=None, compare=False)

    def inverse(self) -> "Twist":
        return Twist(self.curve, -self.exponent, self.name)

    def label(self) -> str:
        return self.name or "c" + "-".join(str(c) for c in self.curve.coords)

    def to_dict(self) -> Dict:
        return {"curve": self.label(), "exponent": self.exponent}


class MappingClass:
    """
    A mapping class as a word in Dehn twists.

    Letters are applied right to left: ``(f * g).apply(u) == f.apply(g.apply(u))``.

    Args:
        triangulation: The triangulation the twist curves live on
        letters: The twist letters
    """

    def __init__(self, triangulation: IdealTriangulation, letters: Iterable[Twist] = ()):
        self.triangulation = triangulation
        self.letters: Tuple[Twist, ...] = tuple(letters)
        for letter in self.letters:
            if letter.curve.triangulation_id != triangulation.identifier:
                raise SurfaceMismatch("twist curve lives on another triangulation")

    @classmethod
    def identity(cls, t: IdealTriangulation) -> "MappingClass":
        return cls(t)

    @property
    def length(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "MappingClass") -> "MappingClass":
        if other.triangulation.identifier != self.triangulation.identifier:
            raise SurfaceMismatch("mapping classes live on different surfaces")
        return MappingClass(self.triangulation, self.letters + other.letters)

    def inverse(self) -> "MappingClass":
        return MappingClass(self.triangulation, (x.inverse() for x in reversed(self.letters)))

    def __pow__(self, n: int) -> "MappingClass":
        base = self if n >= 0 else self.inverse()
        return MappingClass(self.triangulation, base.letters * abs(n))

    def __eq__(self, other):
        return isinstance(other, MappingClass) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        word = " ".join(f"{x.label()}^{x.exponent}" for x in self.letters) or "id"
        return f"MappingClass({word})"

    def to_dict(self) -> List[Dict]:
        return [x.to_dict() for x in self.letters]

    # -- action -------------------------------------------------------------

    def apply_walk(self, walk: Sequence[int]) -> Walk:
        """Image of an oriented closed walk."""
        t = self.triangulation
        walk = tuple(walk)
        for letter in reversed(self.letters):
            walk = twist_walk(t, letter.curve.walk, letter.exponent, walk)
        return walk

    def apply(self, u: NormalMultiCurve) -> NormalMultiCurve:
        return apply(self, u)


def dehn_twist(c: NormalMultiCurve, exponent: int = 1, name: Optional[str] = None) -> MappingClass:
    """The |exponent|-fold twist along c, right-handed for positive exponents.

    Raises:
        NotConnected: If c has several components (or none)
        NotEssential: If c is peripheral
    """
    if c.is_empty or not c.is_connected:
        raise NotConnected("twist curves must be connected")
    if not c.is_essential:
        raise NotEssential("twist curves must be essential")
    if not exponent:
        return MappingClass.identity(c.triangulation)
    return MappingClass(c.triangulation, [Twist(c, exponent, name)])


def apply(f: MappingClass, u: NormalMultiCurve) -> NormalMultiCurve:
    """Coordinates of f(u).

    Raises:
        SurfaceMismatch: If u and f live on different triangulations
    """
    t = f.triangulation
    if u.triangulation_id != t.identifier:
        raise SurfaceMismatch(f"curve lives on {u.triangulation_id}, mapping class on {t.identifier}")
    if not f.letters or u.is_empty:
        return u
    coords = [0] * t.edge_count
    for walk, mult in u.components:
        for e, c in enumerate(walk_coordinates(f.apply_walk(walk), t.edge_count)):
            coords[e] += mult * c
    return NormalMultiCurve(tuple(coords), t)


def apply_collection(f: MappingClass, curves: Sequence[NormalMultiCurve]) -> List[NormalMultiCurve]:
    return [apply(f, c) for c in curves]


def component_multiset(curves: Sequence[NormalMultiCurve]) -> Tuple[Tuple[int, ...], ...]:
    """Sorted component coordinates of a collection, repeated by multiplicity."""
    items = []
    for curve in curves:
        for component, mult in decompose(curve):
            items.extend([component.coords] * mult)
    return tuple(sorted(items))


def stabilizes(f: MappingClass, mu: Sequence[NormalMultiCurve]) -> bool:
    """Whether f permutes the components of mu up to isotopy."""
    return component_multiset(apply_collection(f, mu)) == component_multiset(mu)


def induced_permutation(f: MappingClass, mu: Sequence[NormalMultiCurve]) -> Optional[Tuple[int, ...]]:
    """The permutation of the components of mu induced by f, or None if f moves mu."""
    components = [c for curve in mu for c, _ in decompose(curve)]
    index = {c.coords: i for i, c in enumerate(components)}
    images = []
    for c in components:
        image = apply(f, c).coords
        if image not in index:
            return None
        images.append(index[image])
    if len(set(images)) != len(images):
        return None
    return tuple(images)


def is_identity(f: MappingClass, system: Optional[Sequence[Walk]] = None) -> bool:
    """Alexander-method triviality test.

    f is trivial when it fixes every oriented curve of a filling Alexander
    system. Orientations are compared so that symmetries reversing the
    curves, like the hyperelliptic involution, are told apart.

    Args:
        f: The mapping class
        system: Oriented walks of an Alexander system; defaults to the
            registry of the standard surface f lives on
    """
    if not f.letters:
        return True
    if system is None:
        from arcmodel.core.registry import surface_for

        system = surface_for(f.triangulation).alexander_system
    return all(oriented_form(f.apply_walk(w)) == oriented_form(w) for w in system)


def words(letters: Sequence[Twist], max_length: int) -> List[Tuple[Twist, ...]]:
    """Freely reduced words of length <= max_length in letters and their inverses."""
    alphabet = []
    for x in letters:
        alphabet.extend((x, x.inverse()))
    result: List[Tuple[Twist, ...]] = [()]
    frontier: List[Tuple[Twist, ...]] = [()]
    for _ in range(max_length):
        nxt = []
        for w, x in product(frontier, alphabet):
            if w and w[-1] == x.inverse():
                continue
            nxt.append(w + (x,))
        result.extend(nxt)
        frontier = nxt
    return result


@dataclass
class Generator:
    """A weighted generator z_i of the model."""
    mapping_class: MappingClass
    weight: int
    name: str

    @property
    def twist(self) -> Twist:
        return self.mapping_class.letters[0]


class GeneratorSet:
    """
    Weighted generators Z and stabilizer generators of a sub-ball of the base stabilizer.

    Args:
        generators: The weighted generators, in enumeration order
        stabilizer_generators: Twists fixing the base collection set-wise
        base: When given, every stabilizer generator is checked against it
    """

    def __init__(self, generators: Sequence[Generator], stabilizer_generators: Sequence[MappingClass] = (),
                 base: Optional[Sequence[NormalMultiCurve]] = None):
        if not generators:
            raise EmptyGeneratorSet("at least one generator is required")
        for gen in generators:
            if gen.weight <= 0:
                raise ValueError(f"generator {gen.name} has non-positive weight {gen.weight}")
        self.generators = list(generators)
        self.stabilizer_generators = list(stabilizer_generators)
        if base is not None:
            for h in self.stabilizer_generators:
                if not stabilizes(h, base):
                    raise NotAStabilizer(f"{h!r} moves the base collection")

    @property
    def triangulation(self) -> IdealTriangulation:
        return self.generators[0].mapping_class.triangulation

    @property
    def min_weight(self) -> int:
        return min(g.weight for g in self.generators)

    def stabilizer_words(self, depth: int) -> List[MappingClass]:
        letters = [h.letters[0] for h in self.stabilizer_generators if h.length == 1]
        composite = [h for h in self.stabilizer_generators if h.length != 1]
        t = self.triangulation
        result = [MappingClass(t, w) for w in words(letters, depth)]
        if depth >= 1:
            for h in composite:
                result.extend((h, h.inverse()))
        return result

    def to_dict(self) -> Dict:
        return {
            "generators": [{"name": g.name, "weight": g.weight, "word": g.mapping_class.to_dict()}
                           for g in self.generators],
            "stabilizer_generators": [h.to_dict() for h in self.stabilizer_generators],
        }
