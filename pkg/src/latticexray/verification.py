"""对枚举出的多边形做穷举检查，产出可逐字节复现的 JSON 报告。

每个检查器作用于一个多边形（或一对多边形），返回计数与失败记录；任务按固定大小切块，
经保序进程池执行后按输入顺序合并，因此报告与进程数无关。
"""

from __future__ import annotations

import json
import logging
import random
from collections import Counter
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import partial
from itertools import combinations
from time import perf_counter
from typing import Any

from latticexray.errors import NonIntegerVertexError, TheoremViolationError
from latticexray.lattice_core import (
    ConvexLatticePolygon,
    PrimitiveDirection,
    boundary_lattice_count,
    difference_direction_array,
    edge_directions,
    lattice_points,
    pick_area2,
    pick_identity_holds,
    primitive,
)
from latticexray.projection import fibre_counts, integer_width, support_value
from latticexray.search.collisions import signature_key
from latticexray.search.enumeration import EnumerationSpec, enumerate_symmetric_polygons
from latticexray.search.pool import chunked, ordered_map, resolve_workers
from latticexray.theorems import (
    cup,
    edge_formula_count,
    edge_width_table,
    reconstruct_from_widths,
    reduced_signature_match,
    widths_agree_on_edges,
)

LOGGER = logging.getLogger(__name__)

CHUNK_SIZE = 32
# 支撑值恒等式检查的整数向量范围 |v|∞ ≤ 5
CUP_VECTOR_NORM = 5
# R ≥ 3 时宽度唯一性 / 约化方向检查只抽样这么多对
DEFAULT_PAIR_SAMPLE = 2000


@dataclass(frozen=True)
class CheckRecord:
    kind: str
    polygon: ConvexLatticePolygon
    direction: PrimitiveDirection | None
    holds: bool
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "polygon": self.polygon.as_lists(),
            "direction": self.direction.as_list() if self.direction else None,
            "holds": self.holds,
            **({"detail": self.detail} if self.detail else {}),
        }


@dataclass
class Tally:
    checks: int = 0
    failures: list[CheckRecord] = field(default_factory=list)
    findings: list[dict[str, Any]] = field(default_factory=list)
    counters: Counter[str] = field(default_factory=Counter)

    def merge(self, other: Tally) -> None:
        self.checks += other.checks
        self.failures.extend(other.failures)
        self.findings.extend(other.findings)
        self.counters.update(other.counters)


@dataclass(frozen=True)
class CheckReport:
    kind: str
    radius: int
    polygons_checked: int
    checks_run: int
    failures: tuple[CheckRecord, ...]
    findings: tuple[dict[str, Any], ...] = ()
    counters: tuple[tuple[str, int], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "radius": self.radius,
            "polygons_checked": self.polygons_checked,
            "checks_run": self.checks_run,
            "ok": self.ok,
            "counters": dict(self.counters),
            "failures": [record.to_dict() for record in self.failures],
            "findings": list(self.findings),
        }


def check_theorem32(p: ConvexLatticePolygon) -> Tally:
    tally = Tally()
    for u in sorted(edge_directions(p)):
        tally.checks += 1
        try:
            edge_formula_count(p, u)
        except TheoremViolationError as exc:
            tally.failures.append(CheckRecord("theorem32", p, u, False, exc.witness))
    return tally


def check_lemma35(p: ConvexLatticePolygon) -> Tally:
    """对 D₁ 中每个方向分别记录加倍条件与结论，逆命题只计数不断言。"""
    tally = Tally()
    first = lattice_points(p, 1)
    directions = difference_direction_array(first)
    counts_first = fibre_counts(first, directions)
    counts_second = fibre_counts(lattice_points(p, 2), directions)
    for (a, b), c1, c2 in zip(directions, counts_first, counts_second):
        u = PrimitiveDirection(int(a), int(b))
        applies = 2 * (int(c1) - 1) == int(c2) - 1
        conclusion = int(c1) == integer_width(p, u) + 1
        tally.checks += 1
        tally.counters["applies"] += applies
        tally.counters["conclusion"] += conclusion
        tally.counters["converse_only"] += conclusion and not applies
        if applies and not conclusion:
            tally.failures.append(
                CheckRecord("lemma35", p, u, False,
                            {"count": int(c1), "doubled_count": int(c2),
                             "width": integer_width(p, u)})
            )
    return tally


def check_pick(p: ConvexLatticePolygon) -> Tally:
    tally = Tally(checks=1)
    if not pick_identity_holds(p):
        tally.failures.append(
            CheckRecord("pick", p, None, False,
                        {"area2": pick_area2(p), "lattice_points": len(lattice_points(p, 1)),
                         "boundary_points": boundary_lattice_count(p)})
        )
    return tally


def check_roundtrip(p: ConvexLatticePolygon) -> Tally:
    tally = Tally(checks=1)
    table = edge_width_table(p)
    try:
        rebuilt = reconstruct_from_widths(table)
    except NonIntegerVertexError as exc:
        finding = {"kind": "non_integer_vertex", "polygon": p.as_lists(),
                   "vertex": list(exc.vertex or ())}
        LOGGER.warning(json.dumps({"event": "finding", **finding}, ensure_ascii=False))
        tally.findings.append(finding)
        tally.failures.append(CheckRecord("roundtrip", p, None, False, {"error": str(exc)}))
        return tally
    if rebuilt != p:
        tally.failures.append(
            CheckRecord("roundtrip", p, None, False, {"rebuilt": rebuilt.as_lists()})
        )
    return tally


def _cup_vectors(norm: int) -> list[tuple[int, int]]:
    return [
        (x, y)
        for x in range(-norm, norm + 1)
        for y in range(-norm, norm + 1)
        if (x, y) != (0, 0)
    ]


def check_cup_pair(pair: tuple[ConvexLatticePolygon, ConvexLatticePolygon]) -> Tally:
    """支撑值与整数宽度在 cup 下取最大值。"""
    a, b = pair
    joined = cup(a, b)
    tally = Tally()
    vectors = _cup_vectors(CUP_VECTOR_NORM)
    for v in vectors:
        tally.checks += 1
        expected = max(support_value(a, v), support_value(b, v))
        if support_value(joined, v) != expected:
            tally.failures.append(
                CheckRecord("cup_support", joined, None, False,
                            {"vector": list(v), "a": a.as_lists(), "b": b.as_lists()})
            )
    for u in sorted({primitive(v) for v in vectors}):
        tally.checks += 1
        if integer_width(joined, u) != max(integer_width(a, u), integer_width(b, u)):
            tally.failures.append(
                CheckRecord("cup_width", joined, u, False,
                            {"a": a.as_lists(), "b": b.as_lists()})
            )
    return tally


def check_edge_widths_pair(pair: tuple[ConvexLatticePolygon, ConvexLatticePolygon]) -> Tally:
    left, right = pair
    tally = Tally(checks=1)
    if widths_agree_on_edges(left, right):
        tally.counters["widths_agree"] += 1
        if left != right:
            tally.failures.append(
                CheckRecord("edge_widths", left, None, False, {"other": right.as_lists()})
            )
    return tally


def check_reduced_pair(
    item: tuple[ConvexLatticePolygon, ConvexLatticePolygon, bool],
) -> Tally:
    """约化方向集上匹配 ⇒ 多边形相同；完整双签名匹配 ⇒ 约化匹配。"""
    left, right, full_match = item
    tally = Tally(checks=1)
    reduced = reduced_signature_match(left, right)
    tally.counters["reduced_match"] += reduced
    if (reduced and left != right) or (full_match and not reduced):
        tally.failures.append(
            CheckRecord("reduced_directions", left, None, False,
                        {"other": right.as_lists(), "reduced_match": reduced,
                         "full_match": full_match})
        )
    return tally


def _tally_chunk(checker: Callable[[Any], Tally], chunk: Sequence[Any]) -> Tally:
    total = Tally()
    for item in chunk:
        total.merge(checker(item))
    return total


def _run(
    kind: str,
    radius: int,
    polygons_checked: int,
    checker: Callable[[Any], Tally],
    items: Sequence[Any],
    workers: int,
) -> CheckReport:
    start = perf_counter()
    total = Tally()
    for part in ordered_map(partial(_tally_chunk, checker), chunked(items, CHUNK_SIZE), workers):
        total.merge(part)
    report = CheckReport(
        kind=kind,
        radius=radius,
        polygons_checked=polygons_checked,
        checks_run=total.checks,
        failures=tuple(total.failures),
        findings=tuple(total.findings),
        counters=tuple(sorted(total.counters.items())),
    )
    level = logging.INFO if report.ok else logging.ERROR
    LOGGER.log(
        level,
        json.dumps(
            {
                "event": "sweep",
                "kind": kind,
                "radius": radius,
                "polygons": polygons_checked,
                "checks": total.checks,
                "failures": len(total.failures),
                "workers": workers,
                "latency_ms": int((perf_counter() - start) * 1000),
            },
            ensure_ascii=False,
        ),
    )
    return report


def _polygons(
    radius: int, workers: int, max_vertices: int | None = None
) -> list[ConvexLatticePolygon]:
    spec = EnumerationSpec(radius, max_vertices=max_vertices)
    return list(enumerate_symmetric_polygons(spec, workers=workers))


def _sweep_polygons(
    kind: str, checker: Callable[[ConvexLatticePolygon], Tally], radius: int, workers: int | None
) -> CheckReport:
    workers = resolve_workers(workers)
    polygons = _polygons(radius, workers)
    return _run(kind, radius, len(polygons), checker, polygons, workers)


def sweep_theorem32(radius: int, *, workers: int | None = None) -> CheckReport:
    return _sweep_polygons("theorem32", check_theorem32, radius, workers)


def sweep_lemma35(radius: int, *, workers: int | None = None) -> CheckReport:
    return _sweep_polygons("lemma35", check_lemma35, radius, workers)


def sweep_pick(radius: int, *, workers: int | None = None) -> CheckReport:
    return _sweep_polygons("pick", check_pick, radius, workers)


def sweep_roundtrip(radius: int, *, workers: int | None = None) -> CheckReport:
    return _sweep_polygons("roundtrip", check_roundtrip, radius, workers)


def sweep_parallelograms(radius: int, *, workers: int | None = None) -> CheckReport:
    """边公式检查只作用于平行四边形（4 个顶点）。"""
    workers = resolve_workers(workers)
    polygons = _polygons(radius, workers, max_vertices=4)
    return _run("parallelograms", radius, len(polygons), check_theorem32, polygons, workers)


def sweep_cup(
    radius: int, *, pairs: int = 1000, seed: int = 0, workers: int | None = None
) -> CheckReport:
    workers = resolve_workers(workers)
    pool = _polygons(radius, workers)
    rng = random.Random(seed)
    sample = [(rng.choice(pool), rng.choice(pool)) for _ in range(pairs)]
    return _run("cup", radius, len(pool), check_cup_pair, sample, workers)


def _pairs(
    polygons: list[ConvexLatticePolygon], sample: int | None, seed: int
) -> list[tuple[ConvexLatticePolygon, ConvexLatticePolygon]]:
    if sample is None or len(polygons) < 2:
        return list(combinations(polygons, 2))
    rng = random.Random(seed)
    out = []
    for _ in range(sample):
        i, j = rng.sample(range(len(polygons)), 2)
        out.append((polygons[min(i, j)], polygons[max(i, j)]))
    return out


def _default_sample(radius: int, sample: int | None) -> int | None:
    # R ≤ 2 两两穷举，更大半径默认抽样
    if sample is not None:
        return sample
    return None if radius <= 2 else DEFAULT_PAIR_SAMPLE


def sweep_edge_widths(
    radius: int, *, sample: int | None = None, seed: int = 0, workers: int | None = None
) -> CheckReport:
    workers = resolve_workers(workers)
    polygons = _polygons(radius, workers)
    pairs = _pairs(polygons, _default_sample(radius, sample), seed)
    return _run("edge_widths", radius, len(polygons), check_edge_widths_pair, pairs, workers)


def sweep_reduced_directions(
    radius: int, *, sample: int | None = None, seed: int = 0, workers: int | None = None
) -> CheckReport:
    workers = resolve_workers(workers)
    polygons = _polygons(radius, workers)
    keys = dict(zip(polygons, (signature_key(p, True) for p in polygons)))
    items = [
        (left, right, keys[left] == keys[right])
        for left, right in _pairs(polygons, _default_sample(radius, sample), seed)
    ]
    return _run("reduced_directions", radius, len(polygons), check_reduced_pair, items, workers)


SWEEPS: dict[str, Callable[..., CheckReport]] = {
    "theorem32": sweep_theorem32,
    "parallelograms": sweep_parallelograms,
    "lemma35": sweep_lemma35,
    "pick": sweep_pick,
    "roundtrip": sweep_roundtrip,
    "cup": sweep_cup,
    "edge_widths": sweep_edge_widths,
    "reduced_directions": sweep_reduced_directions,
}
