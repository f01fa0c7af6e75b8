#!/usr/bin/env python3
"""
Tests for the Hausdorff measure module: covering bounds, closed-form
measures of the chord-set catalogue, the Bertrand inner cover, grid probing
and the dimension estimator.
"""

import math
import sys
from fractions import Fraction

import numpy as np
import pytest

from chord_core import Chord, CircleConfig, DegenerateFit, InvalidParameter, UnsupportedGeometry
from hmeasure import (
    ArcRectangle,
    BertrandSet,
    ChordSet,
    FullSpace,
    LongChords,
    SameArc,
    SingleChord,
    TubeSet,
    bertrand_floor_count,
    bertrand_inner_cover,
    covering_count,
    covering_rows,
    dimension_estimate,
    exact_measure,
    grid_cover_count,
    grid_occupancy,
    long_chord_inner_cover,
    measure_report,
    parse_set_spec,
    pieces_for,
    same_arc_partial_sum,
    subdivision_ladder,
    subdivisions_for,
    tube_cover_lower,
    tube_cover_upper,
)
from tube_space import tube_from_arcs

UNIT = CircleConfig(1.0)
TUBE_LADDER = [0.2, 0.1, 0.05, 0.025]


def test_tube_cover_bounds():
    print("=" * 60)
    print("TEST 1: Tube covering bounds")
    print("=" * 60)

    gamma = 0.5
    upper = tube_cover_upper(gamma, 256, 2.0, UNIT)
    lower = tube_cover_lower(gamma, gamma / 256, UNIT)
    assert abs(upper - 0.25) / 0.25 < 1e-3
    assert abs(lower - 0.25) / 0.25 < 1e-3
    assert lower <= upper <= gamma ** 2
    print(f"✓ n=256: lower {lower:.10f} <= upper {upper:.10f} <= γ² = 0.25")

    previous = 0.0
    for k in range(0, 11):
        n = 2 ** k
        u = tube_cover_upper(gamma, n, 2.0, UNIT)
        assert u >= previous
        previous = u
    print("✓ s=2 upper bound increases towards γ² under refinement")

    ladder = [2 ** k for k in range(2, 13)]
    over = [tube_cover_upper(gamma, n, 2.5, UNIT) for n in ladder]
    assert all(b < a for a, b in zip(over, over[1:]))
    assert over[-1] < over[0] / 10
    print(f"✓ s=2.5 sums decrease monotonically ({over[0]:.4f} -> {over[-1]:.6f})")

    under = [tube_cover_upper(gamma, n, 1.5, UNIT) for n in ladder]
    assert all(b > a for a, b in zip(under, under[1:]))
    assert under[-1] > 10 * under[0]
    print(f"✓ s=1.5 sums grow without bound ({under[0]:.4f} -> {under[-1]:.4f})")

    for bad in (0.0, 2.0 * math.sqrt(3.0), 5.0):
        with pytest.raises(InvalidParameter):
            tube_cover_lower(gamma, bad, UNIT)
    with pytest.raises(InvalidParameter):
        tube_cover_upper(gamma, 0, 2.0, UNIT)
    print("✓ out-of-range ε and n rejected")
    print()


def test_same_arc_and_full_space():
    print("=" * 60)
    print("TEST 2: Same-arc series and full-space identity")
    print("=" * 60)

    for gamma in (0.5, 1.0, 2 * math.pi):
        for m in range(1, 61):
            expected = gamma ** 2 / 2 * (1 - 2.0 ** -m)
            assert abs(same_arc_partial_sum(gamma, m) - expected) <= 1e-14 * expected
        assert abs(same_arc_partial_sum(gamma, 40) - gamma ** 2 / 2) <= 1e-12 * gamma ** 2
    print("✓ partial sums equal (γ²/2)(1 − 2^−m); m=40 reaches γ²/2")

    with pytest.raises(InvalidParameter):
        same_arc_partial_sum(1.0, 0)

    for radius in (1.0, 2.0):
        cfg = CircleConfig(radius)
        for n in range(1, 101):
            h = cfg.circumference / n
            total = n * (n - 1) // 2 * h * h + n * SameArc(h).exact_measure(cfg)
            assert abs(total - cfg.full_measure) <= 1e-12 * cfg.full_measure
    print("✓ tubes plus same-arc sets of an n-arc partition add up to 2π²R², n = 1..100")
    print()


def _enumerated_inner_count(n, turn):
    # literal pass over all arc pairs, in exact fractions of a turn
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            low = Fraction(j - i - 1, n)
            high = Fraction(j - i + 1, n)
            if low >= turn and high <= 1 - turn:
                count += 1
    return count


def test_bertrand_inner_cover():
    print("=" * 60)
    print("TEST 3: Bertrand inner cover")
    print("=" * 60)

    for n in range(6, 61):
        assert bertrand_inner_cover(n, UNIT)[0] == _enumerated_inner_count(n, Fraction(1, 3))
    print("✓ matches a literal enumeration of arc pairs for n = 6..60")

    for n in range(6, 601):
        count, _ = bertrand_inner_cover(n, UNIT)
        assert count == n * (n - 1 - 2 * (-(-n // 3))) // 2, n
    print("✓ count = n(n − 1 − 2⌈n/3⌉)/2 for n = 6..600")

    for n in range(6, 601):
        floor_count, _ = bertrand_floor_count(n, UNIT)
        gap = floor_count - bertrand_inner_cover(n, UNIT)[0]
        assert gap == (Fraction(-n, 2) if n % 3 == 0 else Fraction(n, 2)), n
    floor_count, floor_measure = bertrand_floor_count(300, UNIT)
    assert floor_count == 14700 and abs(floor_measure - 6.448) < 1e-3
    print("✓ the floor-formula count n(n − 2 − 2⌊n/3⌋)/2 is off by n/2 (14700 at n=300)")

    assert bertrand_inner_cover(6, UNIT)[0] == 3
    assert bertrand_inner_cover(7, UNIT)[0] == 0
    count, measure = bertrand_inner_cover(12, UNIT)
    assert count == 18 and abs(measure - math.pi ** 2 / 2) < 1e-12
    count, measure = bertrand_inner_cover(300, UNIT)
    assert count == 14850 and abs(measure - 0.66 * math.pi ** 2) < 1e-12
    print("✓ n=6 → 3, n=7 → 0, n=12 → 18 (π²/2), n=300 → 14850")

    exact = BertrandSet().exact_measure(UNIT)
    _, measure = bertrand_inner_cover(3000, UNIT)
    assert measure <= exact and (exact - measure) / exact < 2e-3
    print(f"✓ n=3000 measure {measure:.6f} within 0.2% of 2π²/3 = {exact:.6f}")

    previous = 0.0
    for k in range(0, 9):
        _, measure = bertrand_inner_cover(6 * 2 ** k, UNIT)
        assert previous <= measure <= exact
        previous = measure
    print("✓ increases along n = 6·2^k and stays below 2π²R²/3")

    with pytest.raises(InvalidParameter):
        bertrand_inner_cover(5, UNIT)

    longer = LongChords(1.0)
    for n in (6, 40, 200):
        count, measure = long_chord_inner_cover(longer.turn_fraction(UNIT), n, UNIT)
        assert measure <= longer.exact_measure(UNIT)
    print("✓ the general long-chord inner cover stays below its exact measure")
    print()


def test_catalogue_measures():
    print("=" * 60)
    print("TEST 4: Exact measures of the catalogue")
    print("=" * 60)

    assert exact_measure(FullSpace(), UNIT) == 2 * math.pi ** 2
    assert abs(exact_measure(BertrandSet(), UNIT) - 2 * math.pi ** 2 / 3) < 1e-12
    assert exact_measure(TubeSet(0.5), UNIT) == 0.25
    assert abs(exact_measure(ArcRectangle(math.pi / 2, math.pi), UNIT) - math.pi ** 2 / 2) < 1e-12
    assert exact_measure(SameArc(1.0), UNIT) == 0.5
    assert exact_measure(SingleChord(Chord(0.0, 1.0)), UNIT) == 0.0
    longer = LongChords(math.sqrt(3.0))
    assert abs(longer.exact_measure(UNIT) - BertrandSet().exact_measure(UNIT)) < 1e-12
    print("✓ 2π²R², 2π²R²/3, γ², γ₁γ₂, γ²/2, 0 and the long-chord generalization")

    for radius in (0.5, 3.0):
        cfg = CircleConfig(radius)
        pairs = [(FullSpace(), FullSpace()), (BertrandSet(), BertrandSet()),
                 (LongChords(math.sqrt(3.0) * radius), LongChords(math.sqrt(3.0)))]
        for chord_set, unit_set in pairs:
            scaled = chord_set.exact_measure(cfg)
            base = unit_set.exact_measure(UNIT)
            assert abs(scaled - radius ** 2 * base) <= 1e-12 * scaled
    print("✓ measures scale as R²")

    with pytest.raises(UnsupportedGeometry, match="rect"):
        TubeSet(2.0).exact_measure(UNIT)
    assert exact_measure(ArcRectangle(2.0, 2.0), UNIT) == 4.0
    for bad in (0.0, -1.0):
        with pytest.raises(InvalidParameter):
            TubeSet(bad)
    with pytest.raises(InvalidParameter):
        ArcRectangle(4.0, 3.0).exact_measure(UNIT)
    with pytest.raises(InvalidParameter):
        LongChords(2.0).exact_measure(UNIT)
    print("✓ invalid and unsupported sets rejected")
    print()


def test_parse_set_spec():
    print("=" * 60)
    print("TEST 5: Set spec parsing")
    print("=" * 60)

    assert parse_set_spec("tube:0.5") == TubeSet(0.5)
    assert parse_set_spec("rect:1,2") == ArcRectangle(1.0, 2.0)
    assert parse_set_spec("samearc:1.5") == SameArc(1.5)
    assert parse_set_spec(" FULL ") == FullSpace()
    assert parse_set_spec("bertrand") == BertrandSet()
    assert parse_set_spec("longer:1") == LongChords(1.0)
    assert parse_set_spec("chord:0,1") == SingleChord(Chord(0.0, 1.0))
    assert parse_set_spec(TubeSet(0.5).spec()) == TubeSet(0.5)
    print("✓ every spelling parses, spec() round-trips")

    for bad in ("foo", "tube:", "tube:x", "rect:1", "full:1"):
        with pytest.raises(InvalidParameter):
            parse_set_spec(bad)
    print("✓ unknown names, missing and non-numeric parameters rejected")
    print()


def test_grid_probing():
    print("=" * 60)
    print("TEST 6: Grid covering counts")
    print("=" * 60)

    assert grid_cover_count(FullSpace(), 10, UNIT) == 55
    print("✓ full space meets all 55 cells of the 10-arc grid")

    assert grid_cover_count(BertrandSet(), 300, UNIT) == 15150
    inner, _ = bertrand_inner_cover(300, UNIT)
    assert inner < 15150
    print("✓ Bertrand set meets 15150 cells at n=300 (inner cover 14850)")

    for n in (5, 17, 64):
        assert grid_cover_count(SingleChord(Chord(0.3, 2.0)), n, UNIT) == 1
    print("✓ a single chord is found through its anchor cell")

    h = 2 * math.pi / 10
    aligned = tube_from_arcs(h, 2 * h, 5 * h, 6 * h)
    assert grid_cover_count(aligned, 10, UNIT) == 1
    print("✓ a tube over grid arcs meets exactly its own cell")

    assert grid_occupancy(FullSpace(), 10, UNIT) == 45 + 10 * 6 / 16
    print("✓ occupancy mass of the full space counts diagonal cells by probe share")

    with pytest.raises(InvalidParameter):
        grid_cover_count(FullSpace(), 10, UNIT, resolution=2)
    print()


def test_measure_reports():
    print("=" * 60)
    print("TEST 7: Measure reports")
    print("=" * 60)

    report = measure_report(TubeSet(0.5), UNIT, method="exact")
    assert report.estimates == [] and report.converged
    print("✓ exact report has no ladder and counts as converged")

    report = measure_report(TubeSet(0.5), UNIT, max_subdivisions=256)
    eps = [e.epsilon for e in report.estimates]
    assert eps == sorted(eps, reverse=True)
    assert [e.n_subdivisions for e in report.estimates] == [8, 16, 32, 64, 128, 256]
    for e in report.estimates:
        assert e.lower_bound <= e.upper_bound <= 0.25
    assert report.converged
    assert abs(report.estimates[-1].upper_bound - 0.25) / 0.25 < 1e-3
    print("✓ tube ladder: ε decreasing, lower <= upper <= γ², converged")

    report = measure_report(ArcRectangle(0.5, 1.0), UNIT, max_subdivisions=256)
    last = report.estimates[-1]
    assert abs(last.upper_bound - 0.5) / 0.5 < 1e-3 and last.lower_bound <= last.upper_bound
    print("✓ arc rectangle converges to γ₁γ₂")

    for chord_set in (FullSpace(), SameArc(1.0)):
        report = measure_report(chord_set, UNIT, max_subdivisions=256)
        assert report.converged, chord_set
        for e in report.estimates:
            assert e.lower_bound <= e.upper_bound
    print("✓ full space and same-arc ladders converge")

    report = measure_report(BertrandSet(), UNIT, max_subdivisions=384)
    exact = report.exact_value
    for e in report.estimates:
        assert e.lower_bound <= exact <= e.upper_bound
    assert report.converged
    print(f"✓ Bertrand ladder brackets 2π²/3, last upper {report.estimates[-1].upper_bound:.5f}")

    rows = covering_rows(report)
    assert len(rows) == len(report.estimates)
    assert set(rows[0]) == {"epsilon", "n_subdivisions", "lower_bound", "upper_bound"}

    assert subdivision_ladder(300, 6) == [9, 18, 37, 75, 150, 300]
    with pytest.raises(InvalidParameter):
        measure_report(FullSpace(), UNIT, method="bogus")
    print("✓ csv rows and ladder layout")
    print()


class _Pencil(ChordSet):
    """Chords through the circle point at angle 0.3: a one-dimensional set."""

    def contains(self, a, b, cfg):
        return np.zeros(np.shape(a), dtype=bool)

    def exact_measure(self, cfg):
        return 0.0

    def anchors(self, cfg):
        ends = np.linspace(0.0, 2 * math.pi, 4096, endpoint=False)
        return [Chord(0.3, b) for b in ends if abs(b - 0.3) > 1e-6]

    def spec(self):
        return "pencil:0.3"


def test_dimension_estimate():
    print("=" * 60)
    print("TEST 8: Box-counting dimension")
    print("=" * 60)

    assert [subdivisions_for(e, UNIT) for e in TUBE_LADDER] == [32, 63, 126, 252]
    assert [pieces_for(1.0, e, UNIT) for e in TUBE_LADDER] == [5, 10, 20, 40]

    est = dimension_estimate(TubeSet(1.0), TUBE_LADDER, UNIT)
    assert est.method == "cover"
    assert est.counts == [25, 100, 400, 1600], est.counts
    assert 1.9 <= est.s_estimate <= 2.1, est
    assert abs(est.s_estimate - 2.0) < 1e-9
    print(f"✓ tube γ=1: counts {est.counts}, s = {est.s_estimate:.4f}")

    est = dimension_estimate(FullSpace(), TUBE_LADDER, UNIT)
    assert 1.9 <= est.s_estimate <= 2.1, est
    print(f"✓ full space: s = {est.s_estimate:.4f}")

    est = dimension_estimate(_Pencil(), TUBE_LADDER, UNIT)
    assert est.counts == [32, 63, 126, 252], est.counts
    assert 0.9 <= est.s_estimate <= 1.1, est
    print(f"✓ pencil of chords through one point: s = {est.s_estimate:.4f}")

    est = dimension_estimate(FullSpace(), TUBE_LADDER, UNIT, method="mass")
    assert est.method == "mass" and 1.9 <= est.s_estimate <= 2.1, est
    with pytest.raises(DegenerateFit):
        dimension_estimate(lambda a, b: a == 0.3, TUBE_LADDER, UNIT, method="mass")
    print("✓ occupancy counting is optional and blind to sets of zero area")

    with pytest.raises(DegenerateFit):
        dimension_estimate(SingleChord(Chord(0.3, 2.0)), TUBE_LADDER, UNIT)
    print("✓ constant counts raise DegenerateFit")

    with pytest.raises(InvalidParameter):
        dimension_estimate(TubeSet(1.0), [0.2, 0.1, 0.05], UNIT)
    with pytest.raises(InvalidParameter):
        dimension_estimate(TubeSet(1.0), [0.2, 0.15, 0.12, 0.1], UNIT)
    with pytest.raises(InvalidParameter):
        dimension_estimate(TubeSet(1.0), TUBE_LADDER, UNIT, method="median")
    print("✓ short or narrow ε ladders rejected")
    print()


def test_covering_count_constraint():
    print("=" * 60)
    print("TEST 9: Cover sizes respect N ≥ γ²/ε²")
    print("=" * 60)

    gamma = 0.5
    for k in range(2, 13):
        n = 2 ** k
        eps = 2.0 * math.sin(gamma / (2.0 * n))
        assert n * n >= gamma ** 2 / eps ** 2, n
        assert tube_cover_upper(gamma, n, 1.5, UNIT) >= gamma ** 2 * eps ** -0.5
    print("✓ n×n grid of sub-tubes of diameter ε: n² ≥ γ²/ε², so the s=1.5 sum ≥ γ²/√ε")

    for eps in (0.3, 0.2, 0.1, 0.05, 0.025, 0.01):
        for gamma in (0.5, 1.0):
            count = covering_count(TubeSet(gamma), eps, UNIT)
            k = pieces_for(gamma, eps, UNIT)
            diameter = 2.0 * math.sin(gamma / (2.0 * k))
            assert count == k * k
            assert diameter <= eps * (1 + 1e-12)
            assert count >= gamma ** 2 / diameter ** 2
    print("✓ aligned tube covers use cells of diameter ≤ ε and never too few of them")
    print()


def main():
    """Run all hmeasure tests"""
    print("\n")
    print("╔" + "=" * 58 + "╗")
    print("║" + " " * 16 + "Hausdorff Measure Tests" + " " * 19 + "║")
    print("╚" + "=" * 58 + "╝")
    print()

    try:
        test_tube_cover_bounds()
        test_same_arc_and_full_space()
        test_bertrand_inner_cover()
        test_catalogue_measures()
        test_parse_set_spec()
        test_grid_probing()
        test_measure_reports()
        test_dimension_estimate()
        test_covering_count_constraint()

        print("=" * 60)
        print("✅ All hmeasure tests passed!")
        print("=" * 60)
        return 0

    except AssertionError as e:
        print(f"\n❌ Test failed: {e}")
        import traceback
        traceback.print_exc()
        return 1
    except Exception as e:
        print(f"\n❌ Error during testing: {e}")
        import traceback
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
