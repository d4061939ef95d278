"""
Coarse-equivalence diagnostics of the orbit map.

qi_fit compares witness-word weights against graph distances from the base
vertex; distance_formula_fit regresses ball distances against truncated sums
of projection distances; stabilizer_permutations lists the permutations of
the base components induced by short stabilizing words.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from arcmodel.analysis.farey import FareyChart, curve_graph_bounds, farey_chart
from arcmodel.config import settings
from arcmodel.core.curves import NormalMultiCurve, decompose
from arcmodel.core.mcg import GeneratorSet, MappingClass, induced_permutation, stabilizes, words
from arcmodel.core.model import ModelGraph
from arcmodel.core.subsurface import SubsurfaceSpec, subsurface_cut

logger = logging.getLogger(__name__)


# -- word length against graph distance -------------------------------------------

@dataclass
class QIFit:
    """Minimal (lam, c) with d_word <= lam * d_graph + c on the ball."""
    lam: Fraction
    c: Fraction
    dominated: bool
    rows: List[Dict] = field(default_factory=list)

    @property
    def max_deviation(self) -> int:
        return max((row["deviation"] for row in self.rows), default=0)

    def to_dict(self) -> Dict:
        return {
            "lambda": float(self.lam),
            "c": float(self.c),
            "graph_distance_dominated": self.dominated,
            "max_deviation": self.max_deviation,
            "rows": self.rows,
        }


def qi_fit(m: ModelGraph) -> QIFit:
    """Fit d_word <= lam * d_graph + c over the vertices of the ball.

    Candidate slopes are 1 and every ratio d_word / d_graph; for each the
    smallest admissible c is taken, and the pair minimising (lam + c, lam) wins.
    Graph distance never exceeds the witness-word weight, and this is checked.
    """
    from_base = m.distances[0]
    rows = []
    for v in m.vertices:
        d_graph = from_base[v.index]
        rows.append({"index": v.index, "digest": v.digest, "graph_distance": d_graph,
                     "word_weight": v.word_weight, "deviation": v.word_weight - d_graph})
    dominated = all(row["graph_distance"] <= row["word_weight"] for row in rows)
    if not dominated:
        logger.warning("Graph distance exceeds witness-word weight on some vertex")
    candidates = {Fraction(1)}
    candidates.update(Fraction(row["word_weight"], row["graph_distance"]) for row in rows if row["graph_distance"])
    best = None
    for lam in sorted(candidates):
        c = max([Fraction(0)] + [row["word_weight"] - lam * row["graph_distance"] for row in rows])
        if best is None or (lam + c, lam) < (best[0] + best[1], best[0]):
            best = (lam, c)
    return QIFit(best[0], best[1], dominated, rows)


# -- distance formula ---------------------------------------------------------------

def _set_distance(xs: Sequence[NormalMultiCurve], ys: Sequence[NormalMultiCurve],
                  chart: Optional[FareyChart]) -> Tuple[int, bool]:
    """Distance between two shadow sets: exact through a chart, else the upper bound."""
    if not xs or not ys:
        return 0, chart is not None
    if chart is not None:
        return min(chart.distance(x, y) for x, y in product(xs, ys)), True
    return min(curve_graph_bounds(x, y)[1] for x, y in product(xs, ys)), False


@dataclass
class DistanceFormulaReport:
    """Affine fit d_m ~ slope * sum_W [d_W]_K + intercept over sampled vertex pairs."""
    threshold: int
    slope: float
    intercept: float
    slope_stderr: Optional[float]
    degenerate: bool
    exact: Dict[str, bool]
    rows: List[Dict] = field(default_factory=list)

    @property
    def max_residual(self) -> float:
        return max((abs(row["residual"]) for row in self.rows), default=0.0)

    def confidence_interval(self, z: float = 1.96) -> Optional[Tuple[float, float]]:
        if self.slope_stderr is None:
            return None
        return self.slope - z * self.slope_stderr, self.slope + z * self.slope_stderr

    def to_dict(self) -> Dict:
        return {
            "threshold": self.threshold,
            "slope": self.slope,
            "intercept": self.intercept,
            "slope_stderr": self.slope_stderr,
            "confidence_interval": self.confidence_interval(),
            "degenerate": self.degenerate,
            "exact": self.exact,
            "max_residual": self.max_residual,
            "rows": self.rows,
        }


def sample_pairs(m: ModelGraph, samples: int, seed: int) -> List[Tuple[int, int]]:
    """All vertex pairs when there are at most ``samples`` of them, else a seeded sample."""
    pairs = list(combinations(range(m.vertex_count), 2)) or [(0, 0)]
    if len(pairs) <= samples:
        return pairs
    rng = np.random.default_rng(seed)
    chosen = sorted(rng.choice(len(pairs), size=samples, replace=False).tolist())
    return [pairs[i] for i in chosen]


def distance_formula_fit(m: ModelGraph, witnesses: Sequence[SubsurfaceSpec], threshold: int,
                         samples: Optional[int] = None, seed: Optional[int] = None) -> DistanceFormulaReport:
    """Regress ball distance on the truncated sum of witness projection distances.

    Projection distances are exact on complexity-one witnesses with a chart and
    use the logarithmic upper bound elsewhere. Terms below the threshold are
    dropped. Diagnostic only.
    """
    samples = settings.distance_samples if samples is None else samples
    seed = settings.seed if seed is None else seed
    charts = {W.key: farey_chart(W) for W in witnesses}
    shadows = {W.key: [subsurface_cut(v.curves, W).shadows() for v in m.vertices] for W in witnesses}
    exact = {W.name or W.key: charts[W.key] is not None for W in witnesses}
    rows = []
    for a, b in sample_pairs(m, samples, seed):
        terms = {}
        for W in witnesses:
            d, _ = _set_distance(shadows[W.key][a], shadows[W.key][b], charts[W.key])
            terms[W.name or W.key] = d
        truncated = sum(d for d in terms.values() if d >= threshold)
        rows.append({"u": a, "v": b, "model_distance": m.distance(a, b), "terms": terms, "sum": truncated})

    x = np.array([row["sum"] for row in rows], dtype=float)
    y = np.array([row["model_distance"] for row in rows], dtype=float)
    degenerate = len(set(x.tolist())) < 2
    stderr = None
    if degenerate:
        slope, intercept = 0.0, float(y.mean())
        logger.warning(f"Truncated sums are constant at threshold {threshold}; intercept-only fit")
    else:
        design = np.column_stack([x, np.ones_like(x)])
        (slope, intercept), _, _, _ = np.linalg.lstsq(design, y, rcond=None)
        slope, intercept = float(slope), float(intercept)
        if len(rows) > 2:
            resid = y - design @ np.array([slope, intercept])
            sigma2 = float(resid @ resid) / (len(rows) - 2)
            cov = sigma2 * np.linalg.inv(design.T @ design)
            stderr = float(math.sqrt(cov[0, 0]))
    for row in rows:
        row["residual"] = row["model_distance"] - (slope * row["sum"] + intercept)
    return DistanceFormulaReport(threshold, slope, intercept, stderr, degenerate, exact, rows)


# -- stabilizer permutations ---------------------------------------------------------

@dataclass
class PermutationEcho:
    """Permutations of the base components induced by short stabilizing words."""
    max_length: int
    words_checked: int
    stabilizing: int
    component_count: int
    without_permutation: int = 0
    permutations: Set[Tuple[int, ...]] = field(default_factory=set)

    @property
    def bound(self) -> int:
        return math.factorial(self.component_count)

    def to_dict(self) -> Dict:
        return {
            "max_length": self.max_length,
            "words_checked": self.words_checked,
            "stabilizing": self.stabilizing,
            "component_count": self.component_count,
            "without_permutation": self.without_permutation,
            "permutations": [list(p) for p in sorted(self.permutations)],
            "bound": self.bound,
        }


def stabilizer_permutations(Z: GeneratorSet, mu: Sequence[NormalMultiCurve], max_length: int) -> PermutationEcho:
    """Permutations of the components of mu induced by generator words that stabilize mu.

    Every freely reduced word of length at most max_length in the generators
    and their inverses is tried.
    """
    t = Z.triangulation
    letters = [g.twist for g in Z.generators]
    echo = PermutationEcho(max_length, 0, 0, sum(mult for curve in mu for _, mult in decompose(curve)))
    for word in words(letters, max_length):
        f = MappingClass(t, word)
        echo.words_checked += 1
        if not stabilizes(f, mu):
            continue
        echo.stabilizing += 1
        permutation = induced_permutation(f, mu)
        if permutation is not None:
            echo.permutations.add(permutation)
        else:
            echo.without_permutation += 1
            logger.warning(f"{f!r} stabilizes mu without a component permutation")
    logger.info(f"{echo.stabilizing} of {echo.words_checked} words stabilize mu; "
                f"{len(echo.permutations)} permutations")
    return echo
