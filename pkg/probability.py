#!/usr/bin/env python3
"""
Probability on the chord space: Pr(A) = H²(A) / H²(X) with H²(X) = 2π²R².

Samplers
    h2         uniform point of the triangle {0 <= x < y < 2πR} of arc lengths
    endpoints  two independent uniform endpoint angles
    radius     uniform direction, uniform signed offset along it
    midpoint   uniform midpoint in the open disk

h2 and endpoints induce the same law; radius and midpoint are the classical
alternatives whose Bertrand answers are 1/2 and 1/4.

Monte Carlo runs are split into CHUNK_SIZE chunks. Chunk k always draws from
Philox(SeedSequence(seed, spawn_key=(k,))), so results do not depend on the
number of worker threads.
"""

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

import numpy as np
from scipy.stats import norm

from chord_core import (
    TWO_PI,
    Chord,
    CircleConfig,
    InvalidParameter,
    canonical_pairs,
    chord_lengths,
    is_bertrand_many,
)
from hmeasure import ChordSet, as_predicate
from tube_space import Tube

logger = logging.getLogger("chordspace.probability")

CHUNK_SIZE = 65536
DEFAULT_CONFIDENCE = 0.95


class SamplerKind(str, Enum):
    H2_UNIFORM = "h2"
    RANDOM_ENDPOINTS = "endpoints"
    RANDOM_RADIUS = "radius"
    RANDOM_MIDPOINT = "midpoint"


def parse_kind(value: str) -> SamplerKind:
    try:
        return SamplerKind(value.strip().lower())
    except ValueError:
        names = ", ".join(k.value for k in SamplerKind)
        raise InvalidParameter(f"unknown sampler kind '{value}' (expected one of {names})")


class ParamPoint(NamedTuple):
    """Arc lengths (x, y) of a chord's endpoints, 0 <= x < y < 2πR."""
    x: float
    y: float


@dataclass(frozen=True)
class SampleBatch:
    kind: SamplerKind
    seed: int
    n: int
    hits: int
    p_hat: float
    ci95: Tuple[float, float]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "seed": self.seed,
            "n": self.n,
            "hits": self.hits,
            "p_hat": self.p_hat,
            "ci95": [self.ci95[0], self.ci95[1]],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


# ---------------------------------------------------------------------------
# Exact probabilities
# ---------------------------------------------------------------------------

def probability(set_id: ChordSet, cfg: CircleConfig) -> float:
    """H²(set)/(2π²R²); radius-invariant for every catalogued set."""
    return set_id.exact_measure(cfg) / cfg.full_measure


def analytic_long_chord_probability(kind: SamplerKind, length: float, cfg: CircleConfig) -> float:
    """
    Closed-form P(chord longer than `length`) under each sampler.

    At length √3·R these are 1/3 (h2, endpoints), 1/2 (radius), 1/4 (midpoint).
    """
    if not 0 < length < 2.0 * cfg.radius:
        raise InvalidParameter(f"length must lie in (0, 2R), got {length}")
    q = length / (2.0 * cfg.radius)
    if kind in (SamplerKind.H2_UNIFORM, SamplerKind.RANDOM_ENDPOINTS):
        return 1.0 - 2.0 * math.asin(q) / math.pi
    if kind == SamplerKind.RANDOM_RADIUS:
        return math.sqrt(1.0 - q * q)
    return 1.0 - q * q


def wilson_interval(hits: int, n: int, confidence: float = DEFAULT_CONFIDENCE) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion, clipped to [0, 1]."""
    if n < 1 or not 0 <= hits <= n:
        raise InvalidParameter(f"need 0 <= hits <= n and n >= 1 (got hits={hits}, n={n})")
    if not 0 < confidence < 1:
        raise InvalidParameter(f"confidence must lie in (0, 1), got {confidence}")
    z = float(norm.ppf(0.5 + confidence / 2.0))
    p = hits / n
    denom = 1.0 + z * z / n
    centre = (p + z * z / (2.0 * n)) / denom
    half = z / denom * math.sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n))
    # exact endpoints at p = 0 and p = 1 despite rounding
    low = 0.0 if hits == 0 else max(0.0, min(p, centre - half))
    high = 1.0 if hits == n else min(1.0, max(p, centre + half))
    return low, high


# ---------------------------------------------------------------------------
# Arc-length parametrization
# ---------------------------------------------------------------------------

def chord_to_param(c: Chord, cfg: CircleConfig) -> ParamPoint:
    return ParamPoint(cfg.radius * c.a, cfg.radius * c.b)


def param_to_chord(p: ParamPoint, cfg: CircleConfig) -> Chord:
    if not 0 <= p.x < p.y < cfg.circumference:
        raise InvalidParameter(f"({p.x}, {p.y}) is outside the triangle 0 <= x < y < 2πR")
    return Chord(p.x / cfg.radius, p.y / cfg.radius)


# ---------------------------------------------------------------------------
# Samplers
# ---------------------------------------------------------------------------

def _draw_h2(rng: np.random.Generator, m: int, cfg: CircleConfig):
    # inverse CDF of the uniform law on the triangle: y has density ∝ y
    y = TWO_PI * np.sqrt(rng.random(m))
    x = y * rng.random(m)
    return x, y


def _draw_endpoints(rng: np.random.Generator, m: int, cfg: CircleConfig):
    return canonical_pairs(rng.uniform(0.0, TWO_PI, m), rng.uniform(0.0, TWO_PI, m))


def _draw_radius(rng: np.random.Generator, m: int, cfg: CircleConfig):
    phi = rng.uniform(0.0, TWO_PI, m)
    offset = rng.uniform(-1.0, 1.0, m)
    keep = np.abs(offset) < 1.0
    half = np.arccos(offset[keep])
    return canonical_pairs(phi[keep] - half, phi[keep] + half)


def _draw_midpoint(rng: np.random.Generator, m: int, cfg: CircleConfig):
    x = rng.uniform(-1.0, 1.0, m)
    y = rng.uniform(-1.0, 1.0, m)
    r = np.hypot(x, y)
    keep = (r < 1.0) & (r > 0.0)
    phi = np.arctan2(y[keep], x[keep])
    half = np.arccos(r[keep])
    return canonical_pairs(phi - half, phi + half)


_DRAWERS = {
    SamplerKind.H2_UNIFORM: _draw_h2,
    SamplerKind.RANDOM_ENDPOINTS: _draw_endpoints,
    SamplerKind.RANDOM_RADIUS: _draw_radius,
    SamplerKind.RANDOM_MIDPOINT: _draw_midpoint,
}


def sample_chords(kind: SamplerKind, n: int, rng: np.random.Generator,
                  cfg: Optional[CircleConfig] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Draw n chords as canonical angle arrays (a < b elementwise).

    Null events (coincident endpoints, midpoint at the centre, offset ±R)
    are resampled. Angles do not depend on the radius.
    """
    cfg = cfg or CircleConfig()
    draw = _DRAWERS[SamplerKind(kind)]
    parts_a, parts_b, have = [], [], 0
    while have < n:
        a, b = draw(rng, n - have, cfg)
        valid = a < b
        parts_a.append(a[valid])
        parts_b.append(b[valid])
        have += int(valid.sum())
    return np.concatenate(parts_a)[:n], np.concatenate(parts_b)[:n]


def sample_chord(kind: SamplerKind, rng: np.random.Generator,
                 cfg: Optional[CircleConfig] = None) -> Chord:
    a, b = sample_chords(kind, 1, rng, cfg)
    return Chord(float(a[0]), float(b[0]))


def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    """Generator for one chunk; fixed by (seed, chunk) alone."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def _chunk_sizes(n: int) -> List[int]:
    full, rest = divmod(n, CHUNK_SIZE)
    return [CHUNK_SIZE] * full + ([rest] if rest else [])


def _sample_chunk(kind: SamplerKind, seed: int, chunk: int, size: int, cfg: CircleConfig):
    return sample_chords(kind, size, chunk_rng(seed, chunk), cfg)


def draw_many(kind: SamplerKind, n: int, seed: int, cfg: CircleConfig) -> Tuple[np.ndarray, np.ndarray]:
    """All n chords of a seeded run, in chunk order."""
    parts = [_sample_chunk(kind, seed, k, size, cfg) for k, size in enumerate(_chunk_sizes(n))]
    if not parts:
        return np.empty(0), np.empty(0)
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------

def mc_probability(kind: SamplerKind, event: Any, n: int, seed: int,
                   cfg: Optional[CircleConfig] = None, jobs: int = 1) -> SampleBatch:
    """
    Estimate P(event) from n sampled chords.

    Args:
        kind: sampler
        event: ChordSet, Tube or vectorized predicate(a, b) -> bool array
        n: number of chords (>= 1)
        seed: integer seed
        cfg: circle (radius does not change angles, only set geometry)
        jobs: worker threads; the result is identical for every value

    Returns:
        SampleBatch with hit count, estimate and Wilson 95% interval
    """
    if n < 1:
        raise InvalidParameter(f"sample count must be >= 1, got {n}")
    if jobs < 1:
        raise InvalidParameter(f"jobs must be >= 1, got {jobs}")
    cfg = cfg or CircleConfig()
    kind = SamplerKind(kind)
    predicate = as_predicate(event, cfg)
    sizes = _chunk_sizes(n)

    def count(chunk: int) -> int:
        a, b = _sample_chunk(kind, seed, chunk, sizes[chunk], cfg)
        return int(np.count_nonzero(predicate(a, b)))

    if jobs == 1:
        hits = sum(count(k) for k in range(len(sizes)))
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            hits = sum(pool.map(count, range(len(sizes))))
    logger.debug(f"mc {kind.value} seed={seed}: {hits}/{n} over {len(sizes)} chunk(s), jobs={jobs}")
    return SampleBatch(kind, seed, n, hits, hits / n, wilson_interval(hits, n))


def empirical_tube_probability(t: Tube, n: int, seed: int,
                               cfg: Optional[CircleConfig] = None, jobs: int = 1) -> SampleBatch:
    """H²-uniform Monte Carlo estimate of Pr(t); expected γ₁γ₂/(2π²R²)."""
    return mc_probability(SamplerKind.H2_UNIFORM, t, n, seed, cfg, jobs)


def bertrand_event(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return is_bertrand_many(a, b)


def sample_rows(kind: SamplerKind, n: int, seed: int, cfg: CircleConfig) -> List[Dict[str, Any]]:
    """Rows a, b, length, is_bertrand for CSV export or plotting."""
    if n < 1:
        raise InvalidParameter(f"sample count must be >= 1, got {n}")
    a, b = draw_many(SamplerKind(kind), n, seed, cfg)
    lengths = chord_lengths(a, b, cfg)
    flags = is_bertrand_many(a, b)
    return [{"a": float(x), "b": float(y), "length": float(l), "is_bertrand": bool(f)}
            for x, y, l, f in zip(a, b, lengths, flags)]


if __name__ == "__main__":
    cfg = CircleConfig(1.0)
    for kind in SamplerKind:
        batch = mc_probability(kind, bertrand_event, 200000, seed=7, cfg=cfg)
        exact = analytic_long_chord_probability(kind, math.sqrt(3.0), cfg)
        print(f"{kind.value:10s} p_hat={batch.p_hat:.4f} ci={batch.ci95[0]:.4f}..{batch.ci95[1]:.4f} "
              f"analytic={exact:.4f}")
