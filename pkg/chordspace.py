#!/usr/bin/env python3
"""
chordspace - command-line surface for the chord metric space.

Subcommands:
    dist        Hausdorff distance between two chords
    measure     exact H² of a chord set, optionally with a covering ladder
    bertrand    Monte Carlo probability that a random chord is a Bertrand chord
    dimension   box-counting dimension estimate of a chord set
    sample      raw chord samples (json or csv)
    plot        SVG figure: ball, tube, samples or convergence

Results are printed to stdout as JSON (or CSV with --format csv); diagnostics
go to stderr and logs/. Exit codes: 0 success, 2 bad input, 1 internal error.
"""

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from chord_core import Chord, ChordSpaceError, CircleConfig, InvalidParameter, hausdorff_distance
from hmeasure import (
    DEFAULT_PROBE_RESOLUTION,
    DEFAULT_TOLERANCE,
    covering_rows,
    dimension_estimate,
    measure_report,
    parse_set_spec,
)
from logging_config import get_chordspace_logger, log_exception, log_startup_info
from probability import bertrand_event, mc_probability, parse_kind, sample_rows
from svg_plot import plot_ball, plot_convergence, plot_samples, plot_tube
from tube_space import tube_from_arcs

VERSION = "1.0.0"

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2


@dataclass
class CommandResult:
    command: str
    params: Dict[str, Any]
    result: Any
    elapsed_ms: int = 0
    rows: Optional[List[Dict[str, Any]]] = field(default=None, repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {"command": self.command, "params": self.params,
                "result": self.result, "elapsed_ms": self.elapsed_ms}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------

def parse_floats(text: str, count: Optional[int] = None) -> List[float]:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise InvalidParameter(f"expected comma-separated numbers, got '{text}'")
    if count is not None and len(values) != count:
        raise InvalidParameter(f"expected {count} comma-separated values, got '{text}'")
    if not all(math.isfinite(v) for v in values):
        raise InvalidParameter(f"values must be finite, got '{text}'")
    return values


def parse_chord(text: str) -> Chord:
    a, b = parse_floats(text, 2)
    return Chord(a, b)


def _params(args: argparse.Namespace) -> Dict[str, Any]:
    skip = {"func", "debug", "format", "out"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _require_samples(samples: int):
    if samples < 1:
        raise InvalidParameter(f"--samples must be >= 1, got {samples}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_dist(args, cfg: CircleConfig) -> CommandResult:
    c1, c2 = parse_chord(args.c1), parse_chord(args.c2)
    return CommandResult("dist", _params(args), {"distance": hausdorff_distance(c1, c2, cfg)})


def cmd_measure(args, cfg: CircleConfig) -> CommandResult:
    chord_set = parse_set_spec(args.set)
    max_n = args.n
    if args.eps is not None:
        if args.eps <= 0:
            raise InvalidParameter(f"--eps must be positive, got {args.eps}")
        max_n = math.ceil(chord_set.reference_length(cfg) / args.eps)
    if max_n is not None and max_n < 1:
        raise InvalidParameter(f"--n must be >= 1, got {max_n}")
    report = measure_report(chord_set, cfg, method=args.method,
                            max_subdivisions=max_n, tolerance=args.tolerance)
    return CommandResult("measure", _params(args), report.to_dict(), rows=covering_rows(report))


def cmd_bertrand(args, cfg: CircleConfig) -> CommandResult:
    _require_samples(args.samples)
    batch = mc_probability(parse_kind(args.kind), bertrand_event, args.samples,
                           args.seed, cfg, jobs=args.jobs)
    return CommandResult("bertrand", _params(args), batch.to_dict(), rows=[batch.to_dict()])


def cmd_dimension(args, cfg: CircleConfig) -> CommandResult:
    chord_set = parse_set_spec(args.set)
    estimate = dimension_estimate(chord_set, parse_floats(args.eps), cfg,
                                  method=args.method, resolution=args.probes)
    rows = [{"epsilon": e, "count": n} for e, n in zip(estimate.epsilons, estimate.counts)]
    return CommandResult("dimension", _params(args), estimate.to_dict(), rows=rows)


def cmd_sample(args, cfg: CircleConfig) -> CommandResult:
    _require_samples(args.samples)
    rows = sample_rows(parse_kind(args.kind), args.samples, args.seed, cfg)
    return CommandResult("sample", _params(args), rows, rows=rows)


def cmd_plot(args, cfg: CircleConfig) -> CommandResult:
    if not args.out:
        raise InvalidParameter("plot needs --out")
    if args.what == "ball":
        svg = plot_ball(parse_chord(args.center), args.eps, cfg)
    elif args.what == "tube":
        svg = plot_tube(tube_from_arcs(*parse_floats(args.arcs, 4)), cfg)
    elif args.what == "samples":
        _require_samples(args.samples)
        svg = plot_samples(sample_rows(parse_kind(args.kind), args.samples, args.seed, cfg), cfg)
    else:
        report = measure_report(parse_set_spec(args.set), cfg, method="cover",
                                max_subdivisions=args.n, tolerance=args.tolerance)
        svg = plot_convergence(report)
    svg.save(args.out)
    return CommandResult("plot", _params(args), {"what": args.what, "path": args.out,
                                                 "elements": len(svg.commands)})


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def _render(outcome: CommandResult, fmt: str) -> str:
    if fmt == "json":
        return outcome.to_json() + "\n"
    if not outcome.rows:
        raise InvalidParameter(f"'{outcome.command}' has no tabular output; use --format json")
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(outcome.rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    writer.writerows(outcome.rows)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--radius", type=float, default=1.0,
                        help="Circle radius R (default: 1.0)")
    common.add_argument("--seed", type=int, default=0,
                        help="Random seed (default: 0)")
    common.add_argument("--jobs", type=int, default=1,
                        help="Worker threads for Monte Carlo; results do not depend on it")
    common.add_argument("--format", choices=["json", "csv"], default="json",
                        help="Output format (default: json)")
    common.add_argument("--out",
                        help="Write output to this file instead of stdout (required for plot)")
    common.add_argument("-d", "--debug", action="store_true",
                        help="Enable debug output on stderr")

    parser = argparse.ArgumentParser(
        prog="chordspace",
        description="Chord space of a circle: Hausdorff metric, measure, dimension and Bertrand probability"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", parents=[common], help="Hausdorff distance between two chords")
    p.add_argument("--c1", required=True, help="First chord as angles a,b (radians)")
    p.add_argument("--c2", required=True, help="Second chord as angles a,b (radians)")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("measure", parents=[common], help="H² of a chord set")
    p.add_argument("--set", required=True,
                   help="tube:γ | rect:γ1,γ2 | samearc:γ | full | bertrand | longer:ℓ | chord:a,b")
    p.add_argument("--method", choices=["exact", "cover"], default="exact")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--n", type=int, help="Finest number of subdivisions for the covering ladder")
    group.add_argument("--eps", type=float, help="Finest covering scale (sets --n)")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE,
                   help=f"Relative error for convergence (default: {DEFAULT_TOLERANCE})")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("bertrand", parents=[common], help="Monte Carlo Bertrand probability")
    p.add_argument("--kind", default="h2", help="h2 | endpoints | radius | midpoint")
    p.add_argument("--samples", type=int, default=1000000)
    p.set_defaults(func=cmd_bertrand)

    p = sub.add_parser("dimension", parents=[common], help="Box-counting dimension estimate")
    p.add_argument("--set", required=True, help="Chord set spec (see measure)")
    p.add_argument("--eps", required=True, help="Comma-separated covering scales (at least 4)")
    p.add_argument("--method", choices=["cover", "mass"], default="cover",
                   help="Count covering cells of diameter <= eps (cover) or cell occupancy (mass)")
    p.add_argument("--probes", type=int, default=DEFAULT_PROBE_RESOLUTION,
                   help=f"Probes per cell side (default: {DEFAULT_PROBE_RESOLUTION})")
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("sample", parents=[common], help="Raw chord samples")
    p.add_argument("--kind", default="h2", help="h2 | endpoints | radius | midpoint")
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("plot", parents=[common], help="Write an SVG figure")
    p.add_argument("--what", choices=["ball", "tube", "samples", "convergence"], required=True)
    p.add_argument("--center", default="0,3.141592653589793", help="Ball centre chord a,b")
    p.add_argument("--eps", type=float, default=0.2, help="Ball radius")
    p.add_argument("--arcs", default="0.5236,1.0472,2.618,3.1416",
                   help="Tube arcs as start1,end1,start2,end2 (radians)")
    p.add_argument("--kind", default="h2", help="Sampler for --what samples")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--set", default="tube:1", help="Chord set for --what convergence")
    p.add_argument("--n", type=int, default=256, help="Finest subdivisions for --what convergence")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.set_defaults(func=cmd_plot)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 for --help
        return int(e.code or 0)

    logger, error_logger = get_chordspace_logger(args.debug)
    log_startup_info(logger, f"chordspace {args.command}", VERSION)

    start = time.perf_counter()
    try:
        cfg = CircleConfig(args.radius)
        if args.jobs < 1:
            raise InvalidParameter(f"--jobs must be >= 1, got {args.jobs}")
        outcome = args.func(args, cfg)
        outcome.elapsed_ms = int((time.perf_counter() - start) * 1000)
        text = _render(outcome, args.format)
        if args.out and args.command != "plot":
            with open(args.out, "w", encoding="utf-8") as f:
                f.write(text)
        else:
            sys.stdout.write(text)
    except ChordSpaceError as e:
        logger.warning(f"{args.command}: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as e:
        log_exception(logger, error_logger, e, args.command)
        print(f"Error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL

    logger.info(f"{args.command} finished in {outcome.elapsed_ms} ms")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
