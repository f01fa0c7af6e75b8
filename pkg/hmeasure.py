#!/usr/bin/env python3
"""
Hausdorff outer measure on the space of chords.

Provides the method-I covering bounds for tubes, the closed-form H² values of
the catalogued chord sets (tube, arc rectangle, same-arc set, full space,
Bertrand set, long chords), the inner cover V_n of the Bertrand set, grid
covering counts over the uniform n-arc partition, and a box-counting
dimension estimator.

Grid cells: the circle is cut into n half-open arcs [i·h, (i+1)·h), h = 2π/n.
Cell (i, j), i < j, is the tube between arcs i and j; cell (i, i) is the
same-arc set of arc i. Together they partition the chord space.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from chord_core import (
    BERTRAND_ANGLE,
    TWO_PI,
    Arc,
    Chord,
    CircleConfig,
    DegenerateFit,
    InvalidParameter,
    UnsupportedGeometry,
    canonical_pairs,
    central_angles,
)
from tube_space import Tube, tube_contains_many

logger = logging.getLogger("chordspace.hmeasure")

DEFAULT_TOLERANCE = 1e-2          # relative error at which a ladder counts as converged
DEFAULT_PROBE_RESOLUTION = 4      # probes per cell side (resolution² per cell)
MIN_EPSILON_SPAN = 4.0            # max(ε)/min(ε) required by dimension_estimate
DEFAULT_LADDER_DEPTH = 6          # rungs in a covering ladder
DEFAULT_MAX_SUBDIVISIONS = 256
PROBE_INSET = 1e-9                # corner probes sit this fraction inside the cell
BERTRAND_TURN = Fraction(1, 3)    # 2π/3 as a fraction of the full turn

Predicate = Callable[[np.ndarray, np.ndarray], np.ndarray]


# ---------------------------------------------------------------------------
# Method-I bounds
# ---------------------------------------------------------------------------

def tube_cover_upper(gamma: float, n: int, s: float, cfg: CircleConfig) -> float:
    """
    Method-I upper bound n²·(2R·sin(γ/2Rn))ˢ from the n×n grid of sub-tubes.

    For s = 2 this tends to γ² as n grows, for s > 2 to 0, for s < 2 to ∞.
    """
    if n < 1 or gamma <= 0 or s <= 0:
        raise InvalidParameter(f"need n >= 1, gamma > 0, s > 0 (got n={n}, gamma={gamma}, s={s})")
    r = cfg.radius
    return n ** 2 * (2.0 * r * math.sin(gamma / (2.0 * r * n))) ** s


def _square_packing_factor(eps: float, cfg: CircleConfig) -> float:
    return 1.0 - eps ** 2 / (12.0 * cfg.radius ** 2)


def tube_cover_lower(gamma: float, eps: float, cfg: CircleConfig) -> float:
    """Lower bound (1 − ε²/12R²)·γ² on H²_ε of a tube over arcs of length γ (s = 2)."""
    if gamma <= 0:
        raise InvalidParameter(f"gamma must be positive, got {gamma}")
    if not 0 < eps < 2.0 * cfg.radius * math.sqrt(3.0):
        raise InvalidParameter(f"eps must lie in (0, 2R√3), got {eps}")
    return _square_packing_factor(eps, cfg) * gamma ** 2


def _arc_diameter(h: float, cfg: CircleConfig) -> float:
    """Largest chordal distance between two points of an arc of length h."""
    return 2.0 * cfg.radius * math.sin(min(h / (2.0 * cfg.radius), math.pi / 2.0))


def same_arc_partial_sum(gamma: float, m: int) -> float:
    """
    Sum of the first m levels of the dyadic decomposition of a same-arc set:
    γ²/2² + 2·γ²/4² + 4·γ²/8² + ... = (γ²/2)(1 − 2^−m).
    """
    if m < 1:
        raise InvalidParameter(f"m must be >= 1, got {m}")
    # level k holds 2^(k-1) degenerate tubes over arcs of length γ/2^k
    return math.fsum(2 ** (k - 1) * math.ldexp(gamma ** 2, -2 * k) for k in range(1, m + 1))


# ---------------------------------------------------------------------------
# Chord-set catalogue
# ---------------------------------------------------------------------------

class ChordSet:
    """
    A measurable set of chords with a vectorized membership test.

    contains() receives canonical angle arrays (a < b elementwise).
    """

    def contains(self, a: np.ndarray, b: np.ndarray, cfg: CircleConfig) -> np.ndarray:
        raise NotImplementedError

    def exact_measure(self, cfg: CircleConfig) -> float:
        raise NotImplementedError

    def reference_length(self, cfg: CircleConfig) -> float:
        """Arc length the covering ladder subdivides."""
        return cfg.circumference

    def min_subdivisions(self) -> int:
        return 1

    def covering_bounds(self, n: int, cfg: CircleConfig) -> Tuple[float, float, float]:
        """(epsilon, upper, lower) for the covering with n subdivisions."""
        raise NotImplementedError

    def cover_window(self, cfg: CircleConfig) -> 'CoverWindow':
        """Arcs the covering grid subdivides; the whole circle by default."""
        return CoverWindow.full_circle()

    def anchors(self, cfg: CircleConfig) -> List[Chord]:
        return []

    def spec(self) -> str:
        raise NotImplementedError

    def to_dict(self) -> Dict[str, Any]:
        return {"set": self.spec()}


def _check_positive(name: str, value: float):
    if not math.isfinite(value) or value <= 0:
        raise InvalidParameter(f"{name} must be positive, got {value}")


def _same_arc_bounds(gamma: float, n: int, cfg: CircleConfig) -> Tuple[float, float, float]:
    # n(n-1)/2 tubes between different sub-arcs plus n same-arc cells
    h = gamma / n
    upper = (n * (n - 1) // 2 + n) * _arc_diameter(h, cfg) ** 2
    lower = max(0.0, _square_packing_factor(h, cfg)) * gamma ** 2 / 2.0
    return h, upper, lower


@dataclass(frozen=True)
class TubeSet(ChordSet):
    """
    Closed tube over two arcs of length γ centred at angles ±π/4.

    The placement limits γ to below πR/2; ArcRectangle places wider arcs.
    """

    gamma: float

    def __post_init__(self):
        _check_positive("gamma", self.gamma)

    def tube(self, cfg: CircleConfig) -> Tube:
        half = self.gamma / (2.0 * cfg.radius)
        # arcs stay disjoint and free of antipodal pairs while half < π/4
        if half >= math.pi / 4.0:
            raise UnsupportedGeometry(
                f"tube:{self.gamma:g} centres its arcs at ±π/4, where gamma >= πR/2 "
                f"would take in a diameter; use rect:γ1,γ2 for wider arcs")
        q = math.pi / 4.0
        return Tube(Arc(q - half, q + half), Arc(-q - half, -q + half), closed=True)

    def contains(self, a, b, cfg):
        return tube_contains_many(self.tube(cfg), a, b)

    def cover_window(self, cfg):
        return CoverWindow.of_tube(self.tube(cfg))

    def exact_measure(self, cfg):
        self.tube(cfg)
        return self.gamma ** 2

    def reference_length(self, cfg):
        return self.gamma

    def covering_bounds(self, n, cfg):
        eps = self.gamma / n
        lower = max(0.0, _square_packing_factor(eps, cfg)) * self.gamma ** 2
        return eps, tube_cover_upper(self.gamma, n, 2.0, cfg), lower

    def spec(self):
        return f"tube:{self.gamma:g}"


@dataclass(frozen=True)
class ArcRectangle(ChordSet):
    """Chords between two disjoint arcs of lengths γ₁ and γ₂ (equal gaps between them)."""

    gamma1: float
    gamma2: float

    def __post_init__(self):
        _check_positive("gamma1", self.gamma1)
        _check_positive("gamma2", self.gamma2)

    def tube(self, cfg: CircleConfig) -> Tube:
        t1, t2 = self.gamma1 / cfg.radius, self.gamma2 / cfg.radius
        if t1 + t2 >= TWO_PI:
            raise InvalidParameter(f"arcs {self.gamma1} + {self.gamma2} do not fit on the circle")
        gap = (TWO_PI - t1 - t2) / 2.0
        return Tube(Arc(0.0, t1), Arc(t1 + gap, t1 + gap + t2), closed=True)

    def contains(self, a, b, cfg):
        return tube_contains_many(self.tube(cfg), a, b)

    def cover_window(self, cfg):
        return CoverWindow.of_tube(self.tube(cfg))

    def exact_measure(self, cfg):
        self.tube(cfg)
        return self.gamma1 * self.gamma2

    def reference_length(self, cfg):
        return max(self.gamma1, self.gamma2)

    def covering_bounds(self, n, cfg):
        eps = max(self.gamma1, self.gamma2) / n
        k1 = max(1, math.ceil(self.gamma1 / eps - 1e-9))
        k2 = max(1, math.ceil(self.gamma2 / eps - 1e-9))
        piece = max(self.gamma1 / k1, self.gamma2 / k2)
        upper = k1 * k2 * _arc_diameter(piece, cfg) ** 2
        lower = max(0.0, _square_packing_factor(eps, cfg)) * self.gamma1 * self.gamma2
        return eps, upper, lower

    def spec(self):
        return f"rect:{self.gamma1:g},{self.gamma2:g}"


@dataclass(frozen=True)
class SameArc(ChordSet):
    """Chords with both endpoints on the closed arc [start, start + γ/R]."""

    gamma: float
    start: float = 0.0

    def __post_init__(self):
        _check_positive("gamma", self.gamma)

    def _width(self, cfg: CircleConfig) -> float:
        width = self.gamma / cfg.radius
        if width > TWO_PI:
            raise InvalidParameter(f"arc length {self.gamma} exceeds the circumference")
        return width

    def contains(self, a, b, cfg):
        width = self._width(cfg)
        oa = np.mod(np.asarray(a, dtype=float) - self.start, TWO_PI)
        ob = np.mod(np.asarray(b, dtype=float) - self.start, TWO_PI)
        return (oa <= width) & (ob <= width)

    def cover_window(self, cfg):
        width = self._width(cfg)
        return CoverWindow(self.start, width, self.start, width, same=True)

    def exact_measure(self, cfg):
        self._width(cfg)
        return self.gamma ** 2 / 2.0

    def reference_length(self, cfg):
        return self.gamma

    def covering_bounds(self, n, cfg):
        self._width(cfg)
        return _same_arc_bounds(self.gamma, n, cfg)

    def spec(self):
        return f"samearc:{self.gamma:g}"


@dataclass(frozen=True)
class FullSpace(ChordSet):
    """All chords; H² = 2π²R²."""

    def contains(self, a, b, cfg):
        return np.asarray(a) != np.asarray(b)

    def exact_measure(self, cfg):
        return cfg.full_measure

    def covering_bounds(self, n, cfg):
        return _same_arc_bounds(cfg.circumference, n, cfg)

    def spec(self):
        return "full"


class _CentralAngleSet(ChordSet):
    """Chords whose central angle strictly exceeds a threshold."""

    def threshold(self, cfg: CircleConfig) -> float:
        raise NotImplementedError

    def turn_fraction(self, cfg: CircleConfig) -> Union[Fraction, float]:
        return self.threshold(cfg) / TWO_PI

    def contains(self, a, b, cfg):
        return central_angles(a, b) > self.threshold(cfg)

    def exact_measure(self, cfg):
        # {0 <= a < b < 2π : θ0 < b - a < 2π - θ0} has area 2π(π - θ0)
        return TWO_PI * cfg.radius ** 2 * (math.pi - self.threshold(cfg))

    def min_subdivisions(self):
        return 6

    def covering_bounds(self, n, cfg):
        h = cfg.circumference / n
        outer = grid_cover_count(self, n, cfg)
        _, inner_measure = long_chord_inner_cover(self.turn_fraction(cfg), n, cfg)
        return h, outer * _arc_diameter(h, cfg) ** 2, inner_measure


@dataclass(frozen=True)
class BertrandSet(_CentralAngleSet):
    """Chords longer than √3·R; H² = 2π²R²/3."""

    def threshold(self, cfg):
        return BERTRAND_ANGLE

    def turn_fraction(self, cfg):
        return BERTRAND_TURN

    def exact_measure(self, cfg):
        return cfg.full_measure / 3.0

    def spec(self):
        return "bertrand"


@dataclass(frozen=True)
class LongChords(_CentralAngleSet):
    """Chords strictly longer than `length`; H² = 2πR²(π − 2·asin(length/2R))."""

    length: float

    def __post_init__(self):
        _check_positive("length", self.length)

    def threshold(self, cfg):
        if self.length >= 2.0 * cfg.radius:
            raise InvalidParameter(f"no chord is longer than {self.length} on radius {cfg.radius}")
        return 2.0 * math.asin(self.length / (2.0 * cfg.radius))

    def spec(self):
        return f"longer:{self.length:g}"


@dataclass(frozen=True)
class SingleChord(ChordSet):
    """The one-point set {χ}."""

    chord: Chord

    def contains(self, a, b, cfg):
        return (np.asarray(a) == self.chord.a) & (np.asarray(b) == self.chord.b)

    def exact_measure(self, cfg):
        return 0.0

    def anchors(self, cfg):
        return [self.chord]

    def covering_bounds(self, n, cfg):
        eps = cfg.circumference / n
        return eps, _arc_diameter(eps, cfg) ** 2, 0.0

    def spec(self):
        return f"chord:{self.chord.a:g},{self.chord.b:g}"


def parse_set_spec(text: str) -> ChordSet:
    """
    Parse a cli set spec.

    Grammar: tube:γ | rect:γ1,γ2 | samearc:γ | full | bertrand | longer:ℓ | chord:a,b
    """
    name, _, args = text.strip().lower().partition(":")
    try:
        values = [float(v) for v in args.split(",")] if args else []
    except ValueError:
        raise InvalidParameter(f"non-numeric parameter in set spec '{text}'")
    arity = {"tube": 1, "rect": 2, "samearc": 1, "full": 0, "bertrand": 0, "longer": 1, "chord": 2}
    if name not in arity:
        raise InvalidParameter(f"unknown set '{name}' (expected one of {', '.join(arity)})")
    if len(values) != arity[name]:
        raise InvalidParameter(f"set '{name}' takes {arity[name]} parameter(s), got {len(values)}")
    if name == "tube":
        return TubeSet(values[0])
    if name == "rect":
        return ArcRectangle(values[0], values[1])
    if name == "samearc":
        return SameArc(values[0])
    if name == "full":
        return FullSpace()
    if name == "bertrand":
        return BertrandSet()
    if name == "longer":
        return LongChords(values[0])
    return SingleChord(Chord(values[0], values[1]))


def exact_measure(set_id: ChordSet, cfg: CircleConfig) -> float:
    return set_id.exact_measure(cfg)


def as_predicate(event: Any, cfg: CircleConfig) -> Predicate:
    """Turn a ChordSet, a Tube or a plain callable(a, b) into a vectorized predicate."""
    if isinstance(event, ChordSet):
        return lambda a, b: event.contains(a, b, cfg)
    if isinstance(event, Tube):
        return lambda a, b: tube_contains_many(event, a, b)
    if callable(event):
        return event
    raise InvalidParameter(f"cannot use {type(event).__name__} as a chord predicate")


# ---------------------------------------------------------------------------
# Inner cover of the long-chord sets
# ---------------------------------------------------------------------------

def long_chord_inner_cover(turn_fraction: Union[Fraction, float], n: int,
                           cfg: CircleConfig) -> Tuple[int, float]:
    """
    Count grid cells lying entirely inside {central angle > turn_fraction·2π}.

    For cells between arcs i and j with offset m = j − i the chord angle
    b − a ranges over ((m−1)h, (m+1)h), so the cell is inside iff both
    (m−1)h and (n−m−1)h reach the threshold.

    Returns:
        (tube_count, measure) with measure = tube_count·(2πR/n)²
    """
    if n < 1:
        raise InvalidParameter(f"n must be >= 1, got {n}")
    limit = n * turn_fraction
    count = 0
    for m in range(1, n):
        if m - 1 >= limit and n - m - 1 >= limit:
            count += n - m
    return count, count * (cfg.circumference / n) ** 2


def bertrand_inner_cover(n: int, cfg: CircleConfig) -> Tuple[int, float]:
    """
    Inner cover V_n of the Bertrand set by grid tubes of measure (2πR/n)².

    The count equals n(n − 1 − 2⌈n/3⌉)/2 and the measure increases to
    2π²R²/3 along dyadic refinements n = 6·2^k.
    """
    if n < 6:
        raise InvalidParameter(f"Bertrand inner cover needs n >= 6, got {n}")
    return long_chord_inner_cover(BERTRAND_TURN, n, cfg)


def bertrand_floor_count(n: int, cfg: CircleConfig) -> Tuple[Fraction, float]:
    """
    The closed-form count n(n − 2 − 2⌊n/3⌋)/2 and its measure count·(2πR/n)².

    It differs from the enumerated inner cover by n/2 tubes, below it when 3
    divides n and above it otherwise, and is a half-integer for odd n.
    Bertrand measure reports carry it for comparison.
    """
    if n < 6:
        raise InvalidParameter(f"Bertrand inner cover needs n >= 6, got {n}")
    count = Fraction(n * (n - 2 - 2 * (n // 3)), 2)
    return count, float(count) * (cfg.circumference / n) ** 2


# ---------------------------------------------------------------------------
# Grid probing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverWindow:
    """
    Two arcs, as start angle and angular width, whose chords hold a set.

    A `same` window takes both endpoints on one arc, so only cells (i, j)
    with i <= j are distinct.
    """

    start1: float
    width1: float
    start2: float
    width2: float
    same: bool = False

    @classmethod
    def full_circle(cls) -> 'CoverWindow':
        return cls(0.0, TWO_PI, 0.0, TWO_PI, same=True)

    @classmethod
    def of_tube(cls, t: Tube) -> 'CoverWindow':
        return cls(t.arc1.start, t.arc1.width, t.arc2.start, t.arc2.width)


def _window_of(chord_set: Any, cfg: CircleConfig) -> CoverWindow:
    if isinstance(chord_set, ChordSet):
        return chord_set.cover_window(cfg)
    if isinstance(chord_set, Tube):
        return CoverWindow.of_tube(chord_set)
    return CoverWindow.full_circle()


def _evaluate(predicate: Predicate, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ca, cb = canonical_pairs(a, b)
    return np.asarray(predicate(ca, cb), dtype=bool) & (ca < cb)


def _probe_cells(predicate: Predicate, w: CoverWindow, k1: int, k2: int,
                 fractions: np.ndarray, occupancy: bool) -> np.ndarray:
    """
    Evaluate the predicate on a fractions×fractions stencil in every cell of
    the k1×k2 grid over the window.

    Returns a (k1, k2) array (upper triangle only for same windows): per-cell
    hit flags, or the fraction of stencil points inside the set when
    `occupancy` is set.
    """
    h1, h2 = w.width1 / k1, w.width2 / k2
    p = len(fractions)
    fu, fv = np.meshgrid(fractions, fractions, indexing="ij")
    fu, fv = fu.ravel(), fv.ravel()
    upper = fu < fv
    out = np.zeros((k1, k2), dtype=float if occupancy else bool)
    for i in range(k1):
        j = np.arange(i + 1, k2) if w.same else np.arange(k2)
        if len(j):
            a = np.broadcast_to(w.start1 + (i + fu) * h1, (len(j), p * p))
            b = w.start2 + (j[:, None] + fv[None, :]) * h2
            inside = _evaluate(predicate, a.ravel(), b.ravel()).reshape(len(j), p * p)
            out[i, j] = inside.mean(axis=1) if occupancy else inside.any(axis=1)
        if not w.same:
            continue
        # diagonal cell: stencil points with a < b, plus the centroid for hit tests
        a = w.start1 + (i + fu[upper]) * h1
        b = w.start2 + (i + fv[upper]) * h2
        if not occupancy:
            a = np.append(a, w.start1 + (i + 1.0 / 3.0) * h1)
            b = np.append(b, w.start2 + (i + 2.0 / 3.0) * h2)
        inside = _evaluate(predicate, a, b)
        out[i, i] = inside.sum() / (p * p) if occupancy else inside.any()
    return out


def _anchor_cells(chord_set: Any, w: CoverWindow, k1: int, k2: int,
                  cfg: CircleConfig) -> List[Tuple[int, int]]:
    if not isinstance(chord_set, ChordSet):
        return []
    h1, h2 = w.width1 / k1, w.width2 / k2
    cells = []
    for c in chord_set.anchors(cfg):
        for x, y in ((c.a, c.b), (c.b, c.a)):
            u = ((x - w.start1) % TWO_PI) / h1
            v = ((y - w.start2) % TWO_PI) / h2
            if u <= k1 and v <= k2:
                i, j = min(int(u), k1 - 1), min(int(v), k2 - 1)
                cells.append((min(i, j), max(i, j)) if w.same else (i, j))
                break
    return cells


def _window_cover_count(chord_set: Any, w: CoverWindow, k1: int, k2: int,
                        cfg: CircleConfig, resolution: int) -> int:
    if k1 < 1 or k2 < 1:
        raise InvalidParameter(f"grid needs at least one cell per side, got {k1}×{k2}")
    if resolution < 3:
        raise InvalidParameter(f"probe resolution must be >= 3, got {resolution}")
    fractions = np.linspace(PROBE_INSET, 1.0 - PROBE_INSET, resolution)
    hits = _probe_cells(as_predicate(chord_set, cfg), w, k1, k2, fractions, occupancy=False)
    for i, j in _anchor_cells(chord_set, w, k1, k2, cfg):
        hits[i, j] = True
    return int((np.triu(hits) if w.same else hits).sum())


def grid_cover_count(chord_set: Any, n: int, cfg: CircleConfig,
                     resolution: int = DEFAULT_PROBE_RESOLUTION) -> int:
    """
    Number of cells of the n-arc grid over the whole circle (tubes plus
    same-arc diagonal cells) meeting the set.

    A cell meets the set when any of its resolution² stencil points (corners
    included, pulled PROBE_INSET inside) or a declared anchor chord lies in it.
    Overcounts never undercount, up to probe resolution.
    """
    if n < 1:
        raise InvalidParameter(f"n must be >= 1, got {n}")
    count = _window_cover_count(chord_set, CoverWindow.full_circle(), n, n, cfg, resolution)
    logger.debug(f"grid cover n={n}: {count} cells")
    return count


def covering_count(chord_set: Any, eps: float, cfg: CircleConfig,
                   resolution: int = DEFAULT_PROBE_RESOLUTION) -> int:
    """
    Number of grid cells of diameter <= ε needed to cover the set.

    The grid subdivides the set's own cover window, so a tube over arcs of
    length γ is cut into ⌈γ/ℓ⌉² sub-tubes, ℓ the longest arc piece whose
    chord is at most ε.
    """
    w = _window_of(chord_set, cfg)
    k1 = pieces_for(w.width1, eps, cfg)
    k2 = pieces_for(w.width2, eps, cfg)
    count = _window_cover_count(chord_set, w, k1, k2, cfg, resolution)
    logger.debug(f"covering eps={eps:g} grid {k1}×{k2}: {count} cells")
    return count


def grid_occupancy(chord_set: Any, n: int, cfg: CircleConfig,
                   resolution: int = DEFAULT_PROBE_RESOLUTION) -> float:
    """
    Occupancy mass: sum over cells of the fraction of midpoint probes inside the set.

    Approximates H²(set)/h² over the n-arc grid of the whole circle; cells
    holding an anchor chord count as full.
    """
    if n < 1 or resolution < 1:
        raise InvalidParameter(f"need n >= 1 and resolution >= 1 (got {n}, {resolution})")
    w = CoverWindow.full_circle()
    fractions = (np.arange(resolution) + 0.5) / resolution
    mass = _probe_cells(as_predicate(chord_set, cfg), w, n, n, fractions, occupancy=True)
    for i, j in _anchor_cells(chord_set, w, n, n, cfg):
        mass[i, j] = 1.0
    return math.fsum(np.triu(mass).sum(axis=1))


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoveringEstimate:
    """One (ε, s) evaluation of the method-I outer measure."""

    epsilon: float
    s: float
    n_subdivisions: int
    upper_bound: float
    lower_bound: float

    def __post_init__(self):
        if self.lower_bound < 0 or self.lower_bound > self.upper_bound * (1 + 1e-12):
            raise InvalidParameter(
                f"inconsistent bounds at n={self.n_subdivisions}: {self.lower_bound} > {self.upper_bound}")

    def to_dict(self) -> Dict[str, Any]:
        return {"epsilon": self.epsilon, "s": self.s, "n_subdivisions": self.n_subdivisions,
                "upper_bound": self.upper_bound, "lower_bound": self.lower_bound}


@dataclass
class MeasureReport:
    set_id: str
    exact_value: float
    estimates: List[CoveringEstimate] = field(default_factory=list)
    converged: bool = True
    tolerance: float = DEFAULT_TOLERANCE
    extras: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data = {"set": self.set_id, "exact_value": self.exact_value,
                "estimates": [e.to_dict() for e in self.estimates],
                "converged": self.converged, "tolerance": self.tolerance}
        if self.extras:
            data["extras"] = self.extras
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def subdivision_ladder(max_n: int, min_n: int = 1, depth: int = DEFAULT_LADDER_DEPTH) -> List[int]:
    """Ascending subdivision counts max_n, max_n/2, ... (so ε decreases along the list)."""
    if max_n < min_n:
        raise InvalidParameter(f"need at least {min_n} subdivisions, got {max_n}")
    return sorted({max(max_n >> k, min_n) for k in range(depth)})


def measure_report(set_id: ChordSet, cfg: CircleConfig, method: str = "cover",
                   max_subdivisions: Optional[int] = None,
                   tolerance: float = DEFAULT_TOLERANCE) -> MeasureReport:
    """
    Exact H² value plus, for method "cover", a ladder of covering estimates.

    A report with no estimates counts as converged.
    """
    exact = set_id.exact_measure(cfg)
    report = MeasureReport(set_id.spec(), exact, tolerance=tolerance)
    if method == "exact":
        return report
    if method != "cover":
        raise InvalidParameter(f"unknown method '{method}' (expected exact or cover)")

    max_n = max_subdivisions or DEFAULT_MAX_SUBDIVISIONS
    for n in subdivision_ladder(max_n, set_id.min_subdivisions()):
        eps, upper, lower = set_id.covering_bounds(n, cfg)
        report.estimates.append(CoveringEstimate(eps, 2.0, n, upper, lower))
        logger.debug(f"{set_id.spec()} n={n} eps={eps:.6g} lower={lower:.9g} upper={upper:.9g}")

    if isinstance(set_id, BertrandSet):
        n = report.estimates[-1].n_subdivisions
        count, measure = bertrand_floor_count(n, cfg)
        report.extras = {"floor_formula_count": float(count), "floor_formula_measure": measure}

    last = report.estimates[-1].upper_bound
    error = abs(last - exact) / exact if exact else abs(last)
    report.converged = error < tolerance
    if not report.converged:
        logger.warning(f"{set_id.spec()}: covering ladder stopped at relative error {error:.3g}")
    return report


def covering_rows(report: MeasureReport) -> List[Dict[str, Any]]:
    """Rows (epsilon, n_subdivisions, lower_bound, upper_bound) for CSV export."""
    return [{"epsilon": e.epsilon, "n_subdivisions": e.n_subdivisions,
             "lower_bound": e.lower_bound, "upper_bound": e.upper_bound}
            for e in report.estimates]


# ---------------------------------------------------------------------------
# Dimension
# ---------------------------------------------------------------------------

@dataclass
class DimensionEstimate:
    s_estimate: float
    epsilons: List[float]
    counts: List[float]
    fit_residual: float
    method: str = "cover"

    def to_dict(self) -> Dict[str, Any]:
        return {"s_estimate": self.s_estimate, "epsilons": self.epsilons, "counts": self.counts,
                "fit_residual": self.fit_residual, "method": self.method}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def pieces_for(width: float, eps: float, cfg: CircleConfig) -> int:
    """Fewest equal pieces of an arc of angular width `width` whose chords are <= ε."""
    if not 0 < eps < 2.0 * cfg.radius:
        raise InvalidParameter(f"eps must lie in (0, 2R), got {eps}")
    piece = 2.0 * math.asin(eps / (2.0 * cfg.radius))
    return max(1, math.ceil(width / piece - 1e-9))


def subdivisions_for(eps: float, cfg: CircleConfig) -> int:
    """Smallest n whose grid cells over the whole circle have diameter 2R·sin(π/n) <= ε."""
    return pieces_for(TWO_PI, eps, cfg)


def dimension_estimate(chord_set: Any, epsilons: List[float], cfg: CircleConfig,
                       method: str = "cover",
                       resolution: int = DEFAULT_PROBE_RESOLUTION) -> DimensionEstimate:
    """
    Least-squares slope of log N(ε) against log(1/ε).

    method "cover" counts the cells of diameter <= ε, on a grid aligned to the
    set's cover window, that meet the set. "mass" sums cell occupancy over the
    whole-circle grid instead; it tracks H²/ε² and so only sees sets of
    positive area.

    Raises:
        InvalidParameter: fewer than 4 epsilons or span below MIN_EPSILON_SPAN
        DegenerateFit: counts constant (or zero) across the ladder
    """
    eps = sorted((float(e) for e in epsilons), reverse=True)
    if len(eps) < 4:
        raise InvalidParameter(f"need at least 4 epsilons, got {len(eps)}")
    if eps[0] / eps[-1] < MIN_EPSILON_SPAN:
        raise InvalidParameter(f"epsilons must span a factor of {MIN_EPSILON_SPAN:g}, got {eps[0] / eps[-1]:.3g}")
    if method not in ("cover", "mass"):
        raise InvalidParameter(f"unknown counting method '{method}' (expected cover or mass)")

    counts = []
    for e in eps:
        if method == "cover":
            counts.append(covering_count(chord_set, e, cfg, resolution))
        else:
            counts.append(grid_occupancy(chord_set, subdivisions_for(e, cfg), cfg, resolution))
        logger.debug(f"dimension {method}: eps={e:g} count={counts[-1]:g}")

    y = np.array(counts, dtype=float)
    if np.any(y <= 0):
        raise DegenerateFit("set not detected at some scale; counts must be positive")
    if np.ptp(y) == 0:
        raise DegenerateFit(f"covering counts constant ({counts[0]:g}); no scaling to fit")
    x = np.log(1.0 / np.array(eps))
    slope, intercept = np.polyfit(x, np.log(y), 1)
    residual = float(np.sqrt(np.mean((np.log(y) - (slope * x + intercept)) ** 2)))
    return DimensionEstimate(float(slope), eps, counts, residual, method)


if __name__ == "__main__":
    cfg = CircleConfig(1.0)
    for spec in ("tube:0.5", "full", "bertrand"):
        report = measure_report(parse_set_spec(spec), cfg, max_subdivisions=192)
        last = report.estimates[-1]
        print(f"{spec:10s} exact={report.exact_value:.7f} "
              f"bounds=[{last.lower_bound:.7f}, {last.upper_bound:.7f}] converged={report.converged}")
    print(f"V_300: {bertrand_inner_cover(300, cfg)}")
