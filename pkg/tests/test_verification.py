from __future__ import annotations

import pytest

from latticexray.formats import dump_json
from latticexray.verification import (
    SWEEPS,
    check_cup_pair,
    check_lemma35,
    check_pick,
    check_roundtrip,
    check_theorem32,
    sweep_cup,
    sweep_edge_widths,
    sweep_lemma35,
    sweep_parallelograms,
    sweep_pick,
    sweep_reduced_directions,
    sweep_roundtrip,
    sweep_theorem32,
)


def test_single_polygon_checks(hexagon, parallelogram) -> None:
    for polygon in (hexagon, parallelogram):
        assert check_theorem32(polygon).failures == []
        assert check_pick(polygon).failures == []
        assert check_roundtrip(polygon).failures == []
        tally = check_lemma35(polygon)
        assert tally.failures == []
        assert tally.counters["applies"] <= tally.checks


def test_cup_pair_check(diamond, slanted) -> None:
    tally = check_cup_pair((diamond, slanted))
    assert tally.failures == []
    # 120 个整数向量加上它们的本原方向
    assert tally.checks > 120


@pytest.mark.parametrize("kind", ["theorem32", "pick", "roundtrip", "lemma35", "edge_widths"])
def test_sweeps_pass_at_radius_two(kind) -> None:
    report = SWEEPS[kind](2)
    assert report.ok, report.to_dict()["failures"]
    assert report.findings == ()
    assert report.checks_run > 0


def test_theorem32_sweep_counts_every_edge_direction() -> None:
    report = sweep_theorem32(1)
    # R=1：6 个平行四边形各 2 个方向，2 个六边形各 3 个方向
    assert report.polygons_checked == 8
    assert report.checks_run == 6 * 2 + 2 * 3


def test_parallelogram_sweep() -> None:
    report = sweep_parallelograms(1)
    assert report.polygons_checked == 6
    assert report.ok


def test_lemma35_counters() -> None:
    payload = sweep_lemma35(1).to_dict()
    counters = payload["counters"]
    assert set(counters) == {"applies", "conclusion", "converse_only"}
    assert counters["applies"] + counters["converse_only"] <= payload["checks_run"]


def test_pair_sweeps() -> None:
    cup = sweep_cup(1, pairs=25, seed=7)
    assert cup.ok and cup.polygons_checked == 8
    pairs = sweep_edge_widths(1)
    assert pairs.checks_run == 8 * 7 // 2
    # 边方向宽度各不相同，不会有两两相等
    assert pairs.to_dict()["counters"] == {}
    reduced = sweep_reduced_directions(1)
    assert reduced.ok
    assert reduced.to_dict()["counters"]["reduced_match"] == 0


def test_sampled_pairs_are_reproducible() -> None:
    first = sweep_edge_widths(2, sample=50, seed=3)
    second = sweep_edge_widths(2, sample=50, seed=3)
    assert first.checks_run == 50
    assert first == second


def test_report_is_independent_of_workers() -> None:
    one = dump_json(sweep_pick(2, workers=1).to_dict())
    two = dump_json(sweep_pick(2, workers=2).to_dict())
    assert one == two


@pytest.mark.slow
@pytest.mark.parametrize(
    "sweep", [sweep_theorem32, sweep_lemma35, sweep_pick, sweep_roundtrip, sweep_cup]
)
def test_sweeps_pass_at_radius_three(sweep) -> None:
    report = sweep(3)
    assert report.ok, report.to_dict()["failures"]


@pytest.mark.slow
def test_lemma35_report_identical_across_workers() -> None:
    reports = {dump_json(sweep_lemma35(3, workers=w).to_dict()) for w in (1, 2, 8)}
    assert len(reports) == 1
