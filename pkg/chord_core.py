#!/usr/bin/env python3
"""
Chord core - circle/chord geometry and the Hausdorff metric between chords.

A chord is stored by its two endpoint angles (radians, canonical order a < b)
on a circle of radius R. Cartesian endpoints are derived on demand.
This module also holds the exception hierarchy shared by the whole package.
"""

import json
import math
from dataclasses import dataclass
from typing import Any, Dict, NamedTuple, Tuple

import numpy as np

TWO_PI = 2.0 * math.pi
# Central angle subtended by a side of the inscribed equilateral triangle
BERTRAND_ANGLE = TWO_PI / 3.0

# Angle type: radians, canonicalized into [0, 2π)
Angle = float


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------

class ChordSpaceError(ValueError):
    """Base class for precondition failures anywhere in the package"""


class DegenerateChord(ChordSpaceError):
    """Both endpoints coincide: points of the circle are not chords"""


class InvalidParameter(ChordSpaceError):
    pass


class PreconditionViolated(ChordSpaceError):
    pass


class UnsupportedGeometry(ChordSpaceError):
    """The requested closed form is not established for this configuration"""


class BallTooLarge(ChordSpaceError):
    pass


class DegenerateFit(ChordSpaceError):
    pass


# ---------------------------------------------------------------------------
# Configuration and value types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CircleConfig:
    """Radius of the fixed circle all chords live on."""

    radius: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.radius) or self.radius <= 0:
            raise InvalidParameter(f"radius must be a positive finite length, got {self.radius}")

    @property
    def circumference(self) -> float:
        return TWO_PI * self.radius

    @property
    def full_measure(self) -> float:
        """H² of the whole chord space, 2π²R²"""
        return 2.0 * math.pi ** 2 * self.radius ** 2


class Point2D(NamedTuple):
    x: float
    y: float


def canonicalize_angle(value: float) -> Angle:
    """
    Map an angle in radians into [0, 2π).

    Raises:
        InvalidParameter: for NaN or infinite input
    """
    if not math.isfinite(value):
        raise InvalidParameter(f"angle must be finite, got {value}")
    r = value % TWO_PI
    # value % 2π can round up to exactly 2π for tiny negative inputs
    if r >= TWO_PI:
        r = 0.0
    return r


@dataclass(frozen=True)
class Chord:
    """
    Unordered pair of endpoint angles, stored canonically with a < b.

    Chord(0.5, 0.1) == Chord(0.1, 0.5); angles are wrapped into [0, 2π).
    """

    a: Angle
    b: Angle

    def __post_init__(self):
        a = canonicalize_angle(self.a)
        b = canonicalize_angle(self.b)
        if a == b:
            raise DegenerateChord(f"chord endpoints coincide at angle {a}")
        if a > b:
            a, b = b, a
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def to_dict(self) -> Dict[str, Any]:
        return {"a": self.a, "b": self.b}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Chord':
        return cls(float(data["a"]), float(data["b"]))


@dataclass(frozen=True)
class Arc:
    """Counterclockwise arc from `start` to `end` (both canonical angles)."""

    start: Angle
    end: Angle

    def __post_init__(self):
        object.__setattr__(self, "start", canonicalize_angle(self.start))
        object.__setattr__(self, "end", canonicalize_angle(self.end))
        if self.start == self.end:
            raise InvalidParameter("arc must have positive length")

    @property
    def width(self) -> float:
        """Angular width in (0, 2π)"""
        return (self.end - self.start) % TWO_PI

    @property
    def midpoint(self) -> Angle:
        return canonicalize_angle(self.start + self.width / 2.0)

    def length(self, cfg: CircleConfig) -> float:
        return cfg.radius * self.width

    def contains(self, theta: float, closed: bool = True) -> bool:
        offset = (theta - self.start) % TWO_PI
        if closed:
            return offset <= self.width
        return 0.0 < offset < self.width

    def contains_many(self, theta: np.ndarray, closed: bool = True) -> np.ndarray:
        offset = np.mod(np.asarray(theta, dtype=float) - self.start, TWO_PI)
        if closed:
            return offset <= self.width
        return (offset > 0.0) & (offset < self.width)

    def to_dict(self) -> Dict[str, Any]:
        return {"start": self.start, "end": self.end}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Arc':
        return cls(float(data["start"]), float(data["end"]))


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def canonicalize_chord(a: Angle, b: Angle) -> Chord:
    """Return the canonical chord for the endpoint angles (a, b), in either order."""
    return Chord(a, b)


def endpoints(c: Chord, cfg: CircleConfig) -> Tuple[Point2D, Point2D]:
    r = cfg.radius
    return (Point2D(r * math.cos(c.a), r * math.sin(c.a)),
            Point2D(r * math.cos(c.b), r * math.sin(c.b)))


def central_angle(c: Chord) -> float:
    """Smaller angle subtended at the centre, in (0, π]."""
    d = c.b - c.a
    return min(d, TWO_PI - d)


def chord_length(c: Chord, cfg: CircleConfig) -> float:
    return 2.0 * cfg.radius * math.sin(central_angle(c) / 2.0)


def point_segment_distance(p: Point2D, s: Tuple[Point2D, Point2D]) -> float:
    """
    Euclidean distance from p to the closed segment s.

    The perpendicular foot is used when it falls inside the segment,
    otherwise the nearer endpoint.
    """
    (ax, ay), (bx, by) = s
    dx, dy = bx - ax, by - ay
    denom = dx * dx + dy * dy
    if denom == 0.0:
        # endpoints collapsed in floating point: the segment is a single point
        return math.hypot(p.x - ax, p.y - ay)
    t = ((p.x - ax) * dx + (p.y - ay) * dy) / denom
    if t <= 0.0:
        fx, fy = ax, ay
    elif t >= 1.0:
        fx, fy = bx, by
    else:
        fx, fy = ax + t * dx, ay + t * dy
    return math.hypot(p.x - fx, p.y - fy)


def hausdorff_distance(c1: Chord, c2: Chord, cfg: CircleConfig) -> float:
    """
    Exact Hausdorff distance between two chords as plane segments.

    Distance to a segment is convex along another segment, so the inner
    maximum sits at an endpoint: the result is the largest of the four
    endpoint-to-opposite-chord distances. Lies in [0, 2R].
    """
    s1 = endpoints(c1, cfg)
    s2 = endpoints(c2, cfg)
    return max(point_segment_distance(s1[0], s2),
               point_segment_distance(s1[1], s2),
               point_segment_distance(s2[0], s1),
               point_segment_distance(s2[1], s1))


def is_bertrand(c: Chord, cfg: CircleConfig) -> bool:
    """True iff the chord is strictly longer than the inscribed triangle side √3·R."""
    return central_angle(c) > BERTRAND_ANGLE


# ---------------------------------------------------------------------------
# Vectorized forms (arrays of canonical angles, a < b elementwise)
# ---------------------------------------------------------------------------

def central_angles(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = np.mod(np.asarray(b, dtype=float) - np.asarray(a, dtype=float), TWO_PI)
    return np.minimum(d, TWO_PI - d)


def chord_lengths(a: np.ndarray, b: np.ndarray, cfg: CircleConfig) -> np.ndarray:
    return 2.0 * cfg.radius * np.sin(central_angles(a, b) / 2.0)


def is_bertrand_many(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return central_angles(a, b) > BERTRAND_ANGLE


def _point_segment_distances(px, py, ax, ay, bx, by):
    dx, dy = bx - ax, by - ay
    denom = dx * dx + dy * dy
    nonzero = denom > 0.0
    t = np.where(nonzero, ((px - ax) * dx + (py - ay) * dy) / np.where(nonzero, denom, 1.0), 0.0)
    fx = np.where(t <= 0.0, ax, np.where(t >= 1.0, bx, ax + t * dx))
    fy = np.where(t <= 0.0, ay, np.where(t >= 1.0, by, ay + t * dy))
    return np.hypot(px - fx, py - fy)


def hausdorff_distances(a1: np.ndarray, b1: np.ndarray, a2: np.ndarray, b2: np.ndarray,
                        cfg: CircleConfig) -> np.ndarray:
    """Elementwise hausdorff_distance over broadcastable angle arrays."""
    r = cfg.radius
    a1, b1, a2, b2 = (np.asarray(v, dtype=float) for v in (a1, b1, a2, b2))
    p1x, p1y = r * np.cos(a1), r * np.sin(a1)
    q1x, q1y = r * np.cos(b1), r * np.sin(b1)
    p2x, p2y = r * np.cos(a2), r * np.sin(a2)
    q2x, q2y = r * np.cos(b2), r * np.sin(b2)
    return np.maximum.reduce([
        _point_segment_distances(p1x, p1y, p2x, p2y, q2x, q2y),
        _point_segment_distances(q1x, q1y, p2x, p2y, q2x, q2y),
        _point_segment_distances(p2x, p2y, p1x, p1y, q1x, q1y),
        _point_segment_distances(q2x, q2y, p1x, p1y, q1x, q1y),
    ])


def canonical_pairs(a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Wrap angle arrays into [0, 2π) and order each pair so that a < b."""
    a = np.mod(np.asarray(a, dtype=float), TWO_PI)
    b = np.mod(np.asarray(b, dtype=float), TWO_PI)
    a = np.where(a >= TWO_PI, 0.0, a)
    b = np.where(b >= TWO_PI, 0.0, b)
    return np.minimum(a, b), np.maximum(a, b)


if __name__ == "__main__":
    cfg = CircleConfig(1.0)
    upper = Chord(math.pi / 3, 2 * math.pi / 3)
    lower = Chord(4 * math.pi / 3, 5 * math.pi / 3)
    print(f"upper={upper.to_json()} lower={lower.to_json()}")
    print(f"length(upper)={chord_length(upper, cfg):.7f}")
    print(f"distance={hausdorff_distance(upper, lower, cfg):.7f} (expected √3)")
    print(f"is_bertrand(diameter)={is_bertrand(Chord(0.0, math.pi), cfg)}")
