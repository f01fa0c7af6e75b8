#!/usr/bin/env python3
"""
Standalone SVG figures for the cli `plot` command.

Figures: a metric ball with its arc construction, a tube, a scatter of
sampled chords (Bertrand chords highlighted) and the log-ε convergence plot
of covering bounds. Drawing coordinates are mathematical (y up); the writer
flips them on output.
"""

import html
import logging
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

from chord_core import Arc, Chord, CircleConfig, InvalidParameter
from hmeasure import MeasureReport
from tube_space import Ball, Tube, ball_to_tube, bounding_chords

logger = logging.getLogger("chordspace.svg_plot")

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<svg width="%(width)f" height="%(height)f" viewBox="0 0 %(width)f %(height)f"
     version="1.1" xmlns="http://www.w3.org/2000/svg">
<rect x="0" y="0" width="%(width)f" height="%(height)f" style="fill:#ffffff"/>
<g transform="translate(%(trans_x)f,%(trans_y)f)">
"""

POSTAMBLE = """\
</g></svg>
"""

DRAW_RADIUS = 100.0     # circle radius in drawing units, whatever R is
CENTER_COLOR = "#000000"
ARC_COLOR = "#d62728"
BOUNDARY_COLOR = "#1f77b4"
BERTRAND_COLOR = "#d62728"
OTHER_COLOR = "#999999"


class SVG:
    """Collects drawing commands and the bounding box they need."""

    def __init__(self):
        self.min_x = None
        self.max_x = None
        self.min_y = None
        self.max_y = None
        self.commands: List[str] = []

    def require(self, x: float, y: float):
        if self.min_x is None:
            self.min_x = self.max_x = x
            self.min_y = self.max_y = y
        else:
            self.min_x = min(self.min_x, x)
            self.max_x = max(self.max_x, x)
            self.min_y = min(self.min_y, y)
            self.max_y = max(self.max_y, y)

    def render(self) -> str:
        if self.min_x is None:
            self.require(0.0, 0.0)
        pad = max(self.max_x - self.min_x, self.max_y - self.min_y, 1.0) * 0.1
        values = {
            "width": self.max_x - self.min_x + 2 * pad,
            "height": self.max_y - self.min_y + 2 * pad,
            "trans_x": -self.min_x + pad,
            # y is flipped, so the top of the page is max_y
            "trans_y": self.max_y + pad,
        }
        return PREAMBLE % values + "".join(c + "\n" for c in self.commands) + POSTAMBLE

    def save(self, filename: str):
        with open(filename, "w", encoding="utf-8") as f:
            f.write(self.render())
        logger.info(f"wrote {len(self.commands)} svg elements to {filename}")

    def circle(self, x: float, y: float, radius: float, stroke: str = "#000000",
               fill: str = "none", width: float = 0.8):
        self.require(x - radius, y - radius)
        self.require(x + radius, y + radius)
        self.commands.append(
            f'<circle cx="{x:f}" cy="{-y:f}" r="{radius:f}" '
            f'style="fill:{fill};stroke:{stroke};stroke-width:{width:f}"/>')

    def line(self, points: Sequence[Tuple[float, float]], color: str = "#000000",
             width: float = 0.8, opacity: float = 1.0):
        for x, y in points:
            self.require(x, y)
        coords = " ".join(f"{x:f},{-y:f}" for x, y in points)
        self.commands.append(
            f'<polyline points="{coords}" '
            f'style="fill:none;stroke:{color};stroke-width:{width:f};stroke-opacity:{opacity:g}"/>')

    def text(self, x: float, y: float, text: str, color: str = "#666666", size: float = 8.0):
        self.require(x, y)
        self.require(x + len(text) * size * 0.6, y + size)
        self.commands.append(
            f'<text x="{x:f}" y="{-y:f}" fill="{color}" font-size="{size:g}" '
            f'font-family="monospace">{html.escape(text)}</text>')


# ---------------------------------------------------------------------------
# Chord figures
# ---------------------------------------------------------------------------

def _point(theta: float) -> Tuple[float, float]:
    return DRAW_RADIUS * math.cos(theta), DRAW_RADIUS * math.sin(theta)


def _draw_chord(svg: SVG, a: float, b: float, color: str, width: float = 0.8, opacity: float = 1.0):
    svg.line([_point(a), _point(b)], color, width, opacity)


def _draw_arc(svg: SVG, arc: Arc, color: str, offset: float = 6.0, steps: int = 32):
    # drawn just outside the circle so it stays visible
    r = DRAW_RADIUS + offset
    points = [(r * math.cos(arc.start + arc.width * k / steps),
               r * math.sin(arc.start + arc.width * k / steps)) for k in range(steps + 1)]
    svg.line(points, color, 2.0)


def _draw_tube(svg: SVG, tube: Tube):
    _draw_arc(svg, tube.arc1, ARC_COLOR)
    _draw_arc(svg, tube.arc2, ARC_COLOR)
    for c in bounding_chords(tube):
        if c is not None:
            _draw_chord(svg, c.a, c.b, BOUNDARY_COLOR, 0.8)
    # the crossing pair of extreme chords
    _draw_chord(svg, tube.arc1.start, tube.arc2.start, BOUNDARY_COLOR, 0.5, 0.6)
    _draw_chord(svg, tube.arc1.end, tube.arc2.end, BOUNDARY_COLOR, 0.5, 0.6)


def plot_ball(center: Chord, eps: float, cfg: CircleConfig) -> SVG:
    """Centre chord, the four arc ends of the ε-neighbourhoods and the boundary chords."""
    ball = Ball(center, eps)
    tube = ball_to_tube(ball, cfg)
    svg = SVG()
    svg.circle(0.0, 0.0, DRAW_RADIUS)
    _draw_tube(svg, tube)
    _draw_chord(svg, center.a, center.b, CENTER_COLOR, 1.5)
    svg.text(-DRAW_RADIUS, -DRAW_RADIUS - 20, f"B(chi, {eps:g}), R = {cfg.radius:g}")
    return svg


def plot_tube(tube: Tube, cfg: CircleConfig) -> SVG:
    svg = SVG()
    svg.circle(0.0, 0.0, DRAW_RADIUS)
    _draw_tube(svg, tube)
    svg.text(-DRAW_RADIUS, -DRAW_RADIUS - 20,
             f"arcs {tube.arc1.length(cfg):.4g} and {tube.arc2.length(cfg):.4g}, R = {cfg.radius:g}")
    return svg


def plot_samples(rows: List[Dict[str, Any]], cfg: CircleConfig, title: Optional[str] = None) -> SVG:
    """Sampled chords; Bertrand chords in red on top of the others."""
    svg = SVG()
    svg.circle(0.0, 0.0, DRAW_RADIUS)
    ordered = sorted(rows, key=lambda r: r["is_bertrand"])
    for row in ordered:
        color = BERTRAND_COLOR if row["is_bertrand"] else OTHER_COLOR
        _draw_chord(svg, row["a"], row["b"], color, 0.4, 0.7)
    hits = sum(1 for r in rows if r["is_bertrand"])
    label = title or f"{len(rows)} chords, {hits} Bertrand"
    svg.text(-DRAW_RADIUS, -DRAW_RADIUS - 20, label)
    return svg


# ---------------------------------------------------------------------------
# Convergence plot
# ---------------------------------------------------------------------------

PLOT_WIDTH = 300.0
PLOT_HEIGHT = 200.0


def plot_convergence(report: MeasureReport) -> SVG:
    """Upper and lower bounds against log10(1/ε), with the exact value as a dashed line."""
    if not report.estimates:
        raise InvalidParameter("convergence plot needs a covering ladder (method cover)")
    xs = [math.log10(1.0 / e.epsilon) for e in report.estimates]
    values = ([e.upper_bound for e in report.estimates]
              + [e.lower_bound for e in report.estimates] + [report.exact_value])
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(values), max(values)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def to_plot(x: float, y: float) -> Tuple[float, float]:
        return ((x - x0) / (x1 - x0) * PLOT_WIDTH, (y - y0) / (y1 - y0) * PLOT_HEIGHT)

    svg = SVG()
    svg.line([(0.0, PLOT_HEIGHT), (0.0, 0.0), (PLOT_WIDTH, 0.0)], "#000000", 0.8)
    exact = [to_plot(x0, report.exact_value), to_plot(x1, report.exact_value)]
    svg.line(exact, "#2ca02c", 0.8)
    svg.commands[-1] = svg.commands[-1].replace('"/>', ';stroke-dasharray:4,3"/>')
    upper = [to_plot(x, e.upper_bound) for x, e in zip(xs, report.estimates)]
    lower = [to_plot(x, e.lower_bound) for x, e in zip(xs, report.estimates)]
    svg.line(upper, BOUNDARY_COLOR, 1.2)
    svg.line(lower, ARC_COLOR, 1.2)
    for x, y in upper:
        svg.circle(x, y, 1.5, BOUNDARY_COLOR, BOUNDARY_COLOR)
    for x, y in lower:
        svg.circle(x, y, 1.5, ARC_COLOR, ARC_COLOR)
    svg.text(0.0, -14.0, f"log10(1/eps) {x0:.2f} .. {x1:.2f}")
    svg.text(0.0, PLOT_HEIGHT + 6.0, f"{report.set_id}: exact {report.exact_value:.6g}")
    return svg


if __name__ == "__main__":
    cfg = CircleConfig(1.0)
    plot_ball(Chord(0.0, math.pi), 0.2, cfg).save("ball.svg")
    print("wrote ball.svg")
