"""[−R,R]² 内全部中心对称凸整多边形的穷举。

多边形由上半边界的边向量序列唯一确定：一组按极角 [0,π) 升序排列、两两不同的本原
方向，每个方向带正整数重数。边向量和 S 的两个坐标必须都是偶数，起点 v₀ = −S/2，
另一半边界由中心对称给出。按 (首方向, 首重数) 切分成分片，分片按序合并。
"""

from __future__ import annotations

import json
import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from itertools import chain
from time import perf_counter

from latticexray.lattice_core import ConvexLatticePolygon, IntPair, LatticePoint
from latticexray.search.pool import ordered_map, resolve_workers

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnumerationSpec:
    radius: int
    max_vertices: int | None = None

    def __post_init__(self) -> None:
        if isinstance(self.radius, bool) or not isinstance(self.radius, int) or self.radius < 1:
            raise ValueError(f"radius must be a positive integer, got {self.radius!r}")
        if self.max_vertices is not None and (
            self.max_vertices < 4 or self.max_vertices % 2 != 0
        ):
            raise ValueError(f"max_vertices must be an even integer >= 4, got {self.max_vertices}")


@dataclass(frozen=True)
class Shard:
    # 首个方向在候选列表中的下标与其重数
    first_index: int
    multiplicity: int


def _angle_key(v: IntPair) -> tuple[int, Fraction]:
    a, b = v
    # b > 0 时极角 θ ∈ (0,π)，cot θ = a/b 随 θ 递减
    return (0, Fraction(0)) if b == 0 else (1, Fraction(-a, b))


def candidate_directions(radius: int) -> list[IntPair]:
    """|a|, b ≤ 2R 的规范本原方向，按极角升序。"""
    span = 2 * radius
    dirs = [
        (a, b)
        for a in range(-span, span + 1)
        for b in range(0, span + 1)
        if (b > 0 or a > 0) and math.gcd(a, b) == 1
    ]
    return sorted(dirs, key=_angle_key)


def shards(spec: EnumerationSpec) -> list[Shard]:
    span = 2 * spec.radius
    out = []
    for index, (a, b) in enumerate(candidate_directions(spec.radius)):
        m = 1
        while m * b <= span and m * abs(a) <= span:
            out.append(Shard(index, m))
            m += 1
    return out


def _polygon_from_chain(
    dirs: list[IntPair], chosen: list[tuple[int, int]], radius: int
) -> ConvexLatticePolygon | None:
    sx = sum(m * dirs[i][0] for i, m in chosen)
    sy = sum(m * dirs[i][1] for i, m in chosen)
    if sx % 2 or sy % 2:
        return None
    x, y = -sx // 2, -sy // 2
    half = []
    for i, m in chosen:
        if abs(x) > radius or abs(y) > radius:
            return None
        half.append(LatticePoint(x, y))
        x, y = x + m * dirs[i][0], y + m * dirs[i][1]
    # 链终点 −v₀ 与起点对称，无需单独检查
    return ConvexLatticePolygon.from_vertices(half + [-v for v in half])


def enumerate_shard(spec: EnumerationSpec, shard: Shard) -> list[ConvexLatticePolygon]:
    dirs = candidate_directions(spec.radius)
    span = 2 * spec.radius
    out: list[ConvexLatticePolygon] = []

    def extend(start: int, chosen: list[tuple[int, int]], sx: int, sy: int,
               xmin: int, xmax: int) -> None:
        if len(chosen) >= 2:
            polygon = _polygon_from_chain(dirs, chosen, spec.radius)
            if polygon is not None:
                out.append(polygon)
        if spec.max_vertices is not None and 2 * (len(chosen) + 1) > spec.max_vertices:
            return
        for i in range(start, len(dirs)):
            a, b = dirs[i]
            m = 1
            while True:
                nx, ny = sx + m * a, sy + m * b
                lo, hi = min(xmin, nx), max(xmax, nx)
                # y 前缀和单调、x 前缀和的跨度随 m 单调，越界即可停止
                if ny > span or hi - lo > span:
                    break
                extend(i + 1, [*chosen, (i, m)], nx, ny, lo, hi)
                m += 1

    a0, b0 = dirs[shard.first_index]
    x0, y0 = shard.multiplicity * a0, shard.multiplicity * b0
    extend(shard.first_index + 1, [(shard.first_index, shard.multiplicity)],
           x0, y0, min(0, x0), max(0, x0))
    return out


def enumerate_symmetric_polygons(
    spec: EnumerationSpec, workers: int | None = None
) -> Iterator[ConvexLatticePolygon]:
    """每个多边形恰好产出一次，顺序与进程数无关。"""
    start = perf_counter()
    workers = resolve_workers(workers)
    parts = ordered_map(partial(enumerate_shard, spec), shards(spec), workers)
    LOGGER.info(
        json.dumps(
            {
                "event": "enumerate",
                "radius": spec.radius,
                "max_vertices": spec.max_vertices,
                "polygons": sum(len(part) for part in parts),
                "workers": workers,
                "latency_ms": int((perf_counter() - start) * 1000),
            },
            ensure_ascii=False,
        )
    )
    return chain.from_iterable(parts)
