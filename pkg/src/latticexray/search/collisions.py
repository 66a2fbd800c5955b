"""投影签名碰撞搜索。

find_collisions 按签名键把枚举出的多边形分组：只看 1 倍签名时用来重新发现问题的否定
答案；同时看 1 倍与 2 倍签名时，任何碰撞类都是唯一性定理的反例。
"""

from __future__ import annotations

import json
import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import partial
from time import perf_counter
from typing import Any

from latticexray.errors import TheoremViolationError
from latticexray.lattice_core import ConvexLatticePolygon, IntPair, unimodular_invariants
from latticexray.projection import (
    ProjectionSignature,
    polygon_signature,
    signatures_equal,
)
from latticexray.search.enumeration import EnumerationSpec, enumerate_symmetric_polygons
from latticexray.search.pool import chunked, ordered_map, resolve_workers
from latticexray.storage.index import SignatureIndex
from latticexray.theorems import UniquenessVerdict, uniqueness_check

LOGGER = logging.getLogger(__name__)

# 计算签名键时每个任务包含的多边形数；与进程数无关，保证合并顺序确定
CHUNK_SIZE = 64

# 键函数：(多边形, with_dilate) -> 规范文本键；多进程时必须可 pickle
KeyFunction = Callable[[ConvexLatticePolygon, bool], str]


def signature_key(p: ConvexLatticePolygon, with_dilate: bool) -> str:
    key = polygon_signature(p, 1).key()
    if with_dilate:
        key = f"{key}|{polygon_signature(p, 2).key()}"
    return key


def _restrict(sig: ProjectionSignature, directions: frozenset[IntPair]) -> str:
    kept = ";".join(f"{d.a},{d.b}:{c}" for d, c in sig.counts if d.as_tuple() in directions)
    return f"{sig.total};{kept}"


def restricted_signature_key(
    p: ConvexLatticePolygon, with_dilate: bool, directions: Sequence[IntPair]
) -> str:
    """弱化键：只保留给定方向的计数。用于证明 harness 对比较规则敏感。"""
    allowed = frozenset(tuple(d) for d in directions)
    key = _restrict(polygon_signature(p, 1), allowed)
    if with_dilate:
        key = f"{key}|{_restrict(polygon_signature(p, 2), allowed)}"
    return key


@dataclass(frozen=True)
class CollisionClass:
    key: str
    polygons: tuple[ConvexLatticePolygon, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "key": self.key,
            "polygons": [p.as_lists() for p in self.polygons],
            # 仅供阅读的 GL₂(Z) 不变量注释
            "unimodular_invariants": [unimodular_invariants(p) for p in self.polygons],
        }


@dataclass(frozen=True)
class CollisionReport:
    radius: int
    polygons_enumerated: int
    collision_classes: tuple[CollisionClass, ...]
    with_dilate: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "collisions",
            "radius": self.radius,
            "with_dilate": self.with_dilate,
            "polygons_enumerated": self.polygons_enumerated,
            "collision_classes": [c.to_dict() for c in self.collision_classes],
        }


@dataclass(frozen=True)
class DiscoveryRecord:
    status: str
    max_radius: int
    radius: int | None = None
    key: str | None = None
    witness: tuple[ConvexLatticePolygon, ...] = ()
    verdict: UniquenessVerdict | None = None
    polygons_per_radius: dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "rediscovery",
            "status": self.status,
            "max_radius": self.max_radius,
            "radius": self.radius,
            "key": self.key,
            "witness": [p.as_lists() for p in self.witness],
            "verdict": self.verdict.to_dict() if self.verdict else None,
            "polygons_per_radius": {str(r): n for r, n in self.polygons_per_radius.items()},
        }


def group_collisions(
    entries: Iterable[tuple[ConvexLatticePolygon, str]],
) -> tuple[CollisionClass, ...]:
    """按键分组，保留大小 ≥ 2 的类；类按键排序，类内保持输入顺序。"""
    groups: dict[str, list[ConvexLatticePolygon]] = {}
    for polygon, key in entries:
        groups.setdefault(key, []).append(polygon)
    return tuple(
        CollisionClass(key, tuple(members))
        for key, members in sorted(groups.items())
        if len(members) >= 2
    )


def class_reverifies(cls: CollisionClass, with_dilate: bool) -> bool:
    """类内两两签名相等（按该类的比较模式）。"""
    dilations = (1, 2) if with_dilate else (1,)
    for dilation in dilations:
        sigs = [polygon_signature(p, dilation) for p in cls.polygons]
        if not all(signatures_equal(sigs[0], other) for other in sigs[1:]):
            return False
    return True


def _keys_for_chunk(
    chunk: tuple[ConvexLatticePolygon, ...], key_fn: KeyFunction, with_dilate: bool
) -> list[str]:
    return [key_fn(p, with_dilate) for p in chunk]


def find_collisions(
    spec: EnumerationSpec,
    with_dilate: bool,
    *,
    workers: int | None = None,
    key_fn: KeyFunction = signature_key,
    index: SignatureIndex | None = None,
    extra_polygons: Sequence[ConvexLatticePolygon] = (),
) -> CollisionReport:
    """extra_polygons 追加在枚举结果之后，只用于 harness 自检。"""
    start = perf_counter()
    workers = resolve_workers(workers)
    polygons = [*enumerate_symmetric_polygons(spec, workers=workers), *extra_polygons]

    # 索引只缓存真实签名键，弱化键不读也不写
    use_index = index is not None and key_fn is signature_key
    cached = index.lookup(with_dilate) if use_index else {}
    todo = list(dict.fromkeys(p for p in polygons if p not in cached))
    parts = ordered_map(
        partial(_keys_for_chunk, key_fn=key_fn, with_dilate=with_dilate),
        chunked(todo, CHUNK_SIZE),
        workers,
    )
    computed = dict(zip(todo, (key for part in parts for key in part)))
    if use_index and computed:
        index.append(with_dilate, computed.items())
    keys = {**cached, **computed}

    classes = group_collisions((p, keys[p]) for p in polygons)
    report = CollisionReport(
        radius=spec.radius,
        polygons_enumerated=len(polygons),
        collision_classes=classes,
        with_dilate=with_dilate,
    )
    LOGGER.info(
        json.dumps(
            {
                "event": "find_collisions",
                "radius": spec.radius,
                "with_dilate": with_dilate,
                "polygons": len(polygons),
                "cached": len(polygons) - len(todo),
                "collision_classes": len(classes),
                "workers": workers,
                "latency_ms": int((perf_counter() - start) * 1000),
            },
            ensure_ascii=False,
        )
    )
    return report


def verify_theorem12(
    spec: EnumerationSpec,
    *,
    workers: int | None = None,
    key_fn: KeyFunction = signature_key,
    index: SignatureIndex | None = None,
) -> CollisionReport:
    """两种签名都相同的碰撞一律升级为 TheoremViolationError。"""
    report = find_collisions(spec, True, workers=workers, key_fn=key_fn, index=index)
    if report.collision_classes:
        LOGGER.error(
            json.dumps(
                {"event": "theorem_violation", "radius": spec.radius,
                 "collision_classes": len(report.collision_classes)},
                ensure_ascii=False,
            )
        )
        raise TheoremViolationError(
            f"{len(report.collision_classes)} polygon classes share both signatures "
            f"at radius {spec.radius}",
            witness=report.to_dict(),
        )
    return report


def rediscover_negative_answer(
    max_radius: int = 8,
    *,
    start_radius: int = 1,
    workers: int | None = None,
    index: SignatureIndex | None = None,
) -> DiscoveryRecord:
    """逐步增大半径，寻找只看 1 倍签名时的第一对碰撞多边形。"""
    seen: dict[int, int] = {}
    for radius in range(start_radius, max_radius + 1):
        report = find_collisions(EnumerationSpec(radius), False, workers=workers, index=index)
        seen[radius] = report.polygons_enumerated
        if report.collision_classes:
            cls = report.collision_classes[0]
            left, right = cls.polygons[:2]
            record = DiscoveryRecord(
                status="FOUND",
                max_radius=max_radius,
                radius=radius,
                key=cls.key,
                witness=(left, right),
                verdict=uniqueness_check(left, right),
                polygons_per_radius=seen,
            )
            LOGGER.info(json.dumps({"event": "rediscovery", **record.to_dict()},
                                   ensure_ascii=False))
            return record

    record = DiscoveryRecord(
        status="OPEN-DISCREPANCY", max_radius=max_radius, polygons_per_radius=seen
    )
    LOGGER.warning(json.dumps({"event": "rediscovery", **record.to_dict()}, ensure_ascii=False))
    return record
