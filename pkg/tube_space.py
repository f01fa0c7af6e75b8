#!/usr/bin/env python3
"""
Tube space - metric balls in chord space realized as tubes between two arcs.

A tube is the set of chords with one endpoint on each of two disjoint arcs.
For a small radius the closed tube whose arcs are the chordal
ε-neighbourhoods of the endpoints of χ lies inside the closed ball B(χ, ε)
and fills it up to a thin sliver along the boundary.
"""

import json
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from chord_core import (
    TWO_PI,
    Arc,
    BallTooLarge,
    Chord,
    CircleConfig,
    InvalidParameter,
    PreconditionViolated,
    UnsupportedGeometry,
    central_angle,
    hausdorff_distance,
    hausdorff_distances,
)

logger = logging.getLogger("chordspace.tube_space")

# Slack for comparing arc widths and half-circle containment
ANGLE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Tube:
    """Chords with one endpoint on arc1 and the other on arc2."""

    arc1: Arc
    arc2: Arc
    closed: bool = True

    def __post_init__(self):
        # Interiors must be disjoint; touching ends give the degenerate tubes
        # of the same-arc decomposition.
        offset = (self.arc2.start - self.arc1.start) % TWO_PI
        if (offset < self.arc1.width - ANGLE_TOLERANCE
                or offset + self.arc2.width > TWO_PI + ANGLE_TOLERANCE):
            raise InvalidParameter(f"tube arcs overlap: {self.arc1} and {self.arc2}")

    def to_dict(self) -> Dict[str, Any]:
        return {"arc1": self.arc1.to_dict(), "arc2": self.arc2.to_dict(), "closed": self.closed}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Tube':
        return cls(Arc.from_dict(data["arc1"]), Arc.from_dict(data["arc2"]),
                   bool(data.get("closed", True)))


@dataclass(frozen=True)
class Ball:
    """Metric ball {χ' : ρ(center, χ') ≤ radius} (strict when open)."""

    center: Chord
    radius: float
    closed: bool = True

    def __post_init__(self):
        if not math.isfinite(self.radius) or self.radius <= 0:
            raise InvalidParameter(f"ball radius must be positive, got {self.radius}")

    def to_dict(self) -> Dict[str, Any]:
        return {"center": self.center.to_dict(), "radius": self.radius, "closed": self.closed}


def tube_from_arcs(start1: float, end1: float, start2: float, end2: float,
                   closed: bool = True) -> Tube:
    return Tube(Arc(start1, end1), Arc(start2, end2), closed)


def tube_contains(t: Tube, c: Chord) -> bool:
    closed = t.closed
    return ((t.arc1.contains(c.a, closed) and t.arc2.contains(c.b, closed))
            or (t.arc2.contains(c.a, closed) and t.arc1.contains(c.b, closed)))


def tube_contains_many(t: Tube, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    closed = t.closed
    a1 = t.arc1.contains_many(a, closed)
    b1 = t.arc1.contains_many(b, closed)
    a2 = t.arc2.contains_many(a, closed)
    b2 = t.arc2.contains_many(b, closed)
    return (a1 & b2) | (a2 & b1)


def ball_contains(ball: Ball, c: Chord, cfg: CircleConfig) -> bool:
    d = hausdorff_distance(ball.center, c, cfg)
    return d <= ball.radius if ball.closed else d < ball.radius


def bounding_chords(t: Tube) -> Tuple[Optional[Chord], Optional[Chord]]:
    """
    The two chords bounding the tube: arc1.end–arc2.start and arc2.end–arc1.start.

    A bounding chord of a tube over touching arcs degenerates to a point and
    is returned as None.
    """
    pairs = ((t.arc1.end, t.arc2.start), (t.arc2.end, t.arc1.start))
    return tuple(Chord(x, y) if x != y else None for x, y in pairs)


def _equal_widths(t: Tube) -> float:
    w1, w2 = t.arc1.width, t.arc2.width
    if abs(w1 - w2) > ANGLE_TOLERANCE * max(1.0, w1):
        raise PreconditionViolated(f"tube arcs differ in length: {w1} vs {w2} rad")
    return w1


def _angular_distance(x: float, y: float) -> float:
    d = (x - y) % TWO_PI
    return min(d, TWO_PI - d)


def _in_half_circle(arc: Arc, centre: float) -> bool:
    limit = math.pi / 2.0 + ANGLE_TOLERANCE
    return (_angular_distance(arc.start, centre) <= limit
            and _angular_distance(arc.end, centre) <= limit)


def tube_diameter(t: Tube, cfg: CircleConfig) -> float:
    """
    Diameter 2R·sin(γ/2R) of a tube over two arcs of length γ.

    The formula holds when both arcs lie in one closed half-circle cut off by
    the diameter parallel to the chord joining the arc midpoints.

    Raises:
        PreconditionViolated: arcs of different length
        UnsupportedGeometry: the half-circle condition fails
    """
    width = _equal_widths(t)
    m1, m2 = t.arc1.midpoint, t.arc2.midpoint
    bisector = m1 + ((m2 - m1) % TWO_PI) / 2.0
    if not any(_in_half_circle(t.arc1, psi) and _in_half_circle(t.arc2, psi)
               for psi in (bisector, bisector + math.pi)):
        raise UnsupportedGeometry("tube arcs do not lie in one half-circle; diameter formula not established")
    return 2.0 * cfg.radius * math.sin(width / 2.0)


def ball_to_tube(b: Ball, cfg: CircleConfig) -> Tube:
    """
    Tube whose arcs are the chordal ε-neighbourhoods of the centre's endpoints.

    Each arc has angular half-width 2·asin(ε/2R) around its endpoint angle.

    Raises:
        BallTooLarge: the neighbourhoods are not disjoint arcs
    """
    r = cfg.radius
    if b.radius >= 2.0 * r:
        raise BallTooLarge(f"ball radius {b.radius} reaches across the circle (2R = {2 * r})")
    half_width = 2.0 * math.asin(b.radius / (2.0 * r))
    if 2.0 * half_width >= central_angle(b.center):
        raise BallTooLarge(f"endpoint neighbourhoods of {b.center} overlap at radius {b.radius}")
    c = b.center
    return Tube(Arc(c.a - half_width, c.a + half_width),
                Arc(c.b - half_width, c.b + half_width),
                closed=b.closed)


def tube_center_and_radius(t: Tube, cfg: CircleConfig) -> Ball:
    """Ball centred at the chord of arc midpoints with radius 2R·sin(γ/4R)."""
    width = _equal_widths(t)
    center = Chord(t.arc1.midpoint, t.arc2.midpoint)
    return Ball(center, 2.0 * cfg.radius * math.sin(width / 4.0), closed=t.closed)


def ball_tube_disagreements(ball: Ball, probe_a: np.ndarray, probe_b: np.ndarray,
                            cfg: CircleConfig, band: float = 1e-9) -> List[Dict[str, float]]:
    """
    Probe chords where metric-ball membership and tube membership differ.

    The tube always lies inside the ball. The ball is larger: it also holds
    chords whose endpoints sit farther than ε from the centre's endpoints
    while the segments stay within ε (a rotated diameter is one), so
    ball-only probes are expected near the boundary. Tube-only probes
    would break the inclusion. Probes whose distance to the centre lies
    within `band`·R of the ball radius are skipped. Every disagreement
    found is logged and returned.
    """
    tube = ball_to_tube(ball, cfg)
    a = np.asarray(probe_a, dtype=float)
    b = np.asarray(probe_b, dtype=float)
    d = hausdorff_distances(ball.center.a, ball.center.b, a, b, cfg)
    in_ball = d <= ball.radius if ball.closed else d < ball.radius
    in_tube = tube_contains_many(tube, a, b)
    outside_band = np.abs(d - ball.radius) > band * cfg.radius
    bad = np.flatnonzero((in_ball != in_tube) & outside_band)
    found = [{"a": float(a[i]), "b": float(b[i]), "distance": float(d[i]),
              "in_ball": bool(in_ball[i]), "in_tube": bool(in_tube[i])} for i in bad]
    if found:
        tube_only = sum(1 for row in found if row["in_tube"])
        logger.warning(f"ball/tube disagreement around {ball.center} eps={ball.radius}: "
                       f"{len(found) - tube_only} ball-only, {tube_only} tube-only probe(s)")
    return found


if __name__ == "__main__":
    cfg = CircleConfig(1.0)
    ball = Ball(Chord(0.0, math.pi), 0.2)
    tube = ball_to_tube(ball, cfg)
    print(f"ball -> tube: {tube.to_json()}")
    print(f"back to ball: {tube_center_and_radius(tube, cfg)}")
    fig3 = tube_from_arcs(math.pi / 4 - math.pi / 6, math.pi / 4 + math.pi / 6,
                          -math.pi / 4 - math.pi / 6, -math.pi / 4 + math.pi / 6)
    print(f"diameter of tube with γ=π/3: {tube_diameter(fig3, cfg):.6f}")
