"""投影计数、整数宽度、支撑值与投影签名。

两个格点投影到 u⊥ 上重合，当且仅当线性型 a·y − b·x 取值相同，所以投影计数就是
该线性型在点集上的不同取值个数；整数宽度 W = |û|·w(u⊥) 是同一线性型的 max − min。
任何地方都不生成几何投影坐标。
"""

from __future__ import annotations

import re
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property
from typing import Any

import numpy as np

from latticexray.errors import (
    EmptySetError,
    InputFormatError,
    NotConvexLatticeSetError,
    ZeroVectorError,
)
from latticexray.lattice_core import (
    ConvexLatticePolygon,
    IntPair,
    LatticePoint,
    PointSet,
    PrimitiveDirection,
    checked,
    difference_direction_array,
    dilated_lattice_points,
    is_convex_lattice_set,
    lattice_points,
    require_int64_bound,
)

_KEY_ENTRY = re.compile(r"^(-?\d+),(-?\d+):(\d+)$")


@dataclass(frozen=True)
class ProjectionSignature:
    """(|A|, {u ↦ |A|u⊥| : u ∈ D₁A})；不在 counts 中的方向，计数等于 total。"""

    total: int
    counts: tuple[tuple[PrimitiveDirection, int], ...]

    def __post_init__(self) -> None:
        counts = tuple(sorted(self.counts))
        for direction, count in counts:
            if not 1 <= count <= self.total:
                raise ValueError(
                    f"projection count {count} at {direction} outside [1, {self.total}]"
                )
        object.__setattr__(self, "counts", counts)

    @cached_property
    def as_dict(self) -> dict[PrimitiveDirection, int]:
        return dict(self.counts)

    def count(self, u: PrimitiveDirection) -> int:
        return self.as_dict.get(u, self.total)

    def key(self) -> str:
        """规范文本形式 `total;a1,b1:c1;...`，方向按字典序。"""
        body = ";".join(f"{d.a},{d.b}:{c}" for d, c in self.counts)
        return f"{self.total};{body}"

    @classmethod
    def from_key(cls, text: str) -> ProjectionSignature:
        head, _, body = text.strip().partition(";")
        if not head.isdigit():
            raise InputFormatError(f"signature total must be a non-negative integer: {head!r}")
        counts = []
        for i, entry in enumerate(filter(None, body.split(";"))):
            match = _KEY_ENTRY.match(entry)
            if match is None:
                raise InputFormatError(f"malformed signature entry {entry!r}", field=f"entry {i}")
            a, b, c = (int(g) for g in match.groups())
            counts.append((PrimitiveDirection(a, b), c))
        return cls(int(head), tuple(counts))

    def to_dict(self) -> dict[str, Any]:
        return {
            "total": self.total,
            "counts": [[d.a, d.b, c] for d, c in self.counts],
        }


def _direction_array(directions: Iterable[PrimitiveDirection]) -> np.ndarray:
    return np.array([d.as_tuple() for d in directions], dtype=np.int64).reshape(-1, 2)


def fibre_counts(s: PointSet, directions: np.ndarray) -> np.ndarray:
    """对每个方向一次性计算不同纤维的个数，返回与 directions 对齐的计数数组。"""
    if len(directions) == 0:
        return np.empty(0, dtype=np.int64)
    max_component = int(np.abs(directions).max())
    require_int64_bound(2 * max_component * s.max_abs, "projection linear form")
    coords = s.coords
    # values[i, j] = a_i·y_j − b_i·x_j
    values = directions[:, :1] * coords[:, 1] - directions[:, 1:] * coords[:, 0]
    values.sort(axis=1)
    return 1 + np.count_nonzero(np.diff(values, axis=1), axis=1)


def projection_count(s: PointSet, u: PrimitiveDirection) -> int:
    if len(s) == 0:
        raise EmptySetError("projection of an empty point set")
    return int(fibre_counts(s, _direction_array([u]))[0])


def _shape_points(shape: PointSet | ConvexLatticePolygon) -> tuple[LatticePoint, ...]:
    # 多边形只看顶点：线性型的极值在顶点处取得
    if isinstance(shape, ConvexLatticePolygon):
        return shape.vertices
    return shape.points


def integer_width(shape: PointSet | ConvexLatticePolygon, u: PrimitiveDirection) -> int:
    """W(K,u) = max − min (a·y − b·x) = |û|·w_K(u⊥)。"""
    points = _shape_points(shape)
    if not points:
        raise EmptySetError("width of an empty point set")
    values = [u.form(p) for p in points]
    return checked(max(values) - min(values))


def support_value(p: ConvexLatticePolygon, v: IntPair) -> int:
    """S(K,v) = max ⟨v,x⟩，v 为非规范化整数向量。"""
    if v[0] == 0 and v[1] == 0:
        raise ZeroVectorError("support value needs a nonzero vector")
    return max(x.dot(v) for x in p.vertices)


def signature_of_points(points: PointSet) -> ProjectionSignature:
    """不做凸性检查的签名计算；调用方保证 points 是凸格点集。"""
    directions = difference_direction_array(points)
    counts = fibre_counts(points, directions)
    return ProjectionSignature(
        total=len(points),
        counts=tuple(
            (PrimitiveDirection(int(a), int(b)), int(c))
            for (a, b), c in zip(directions, counts)
        ),
    )


def signature(s: PointSet, dilation: int = 1) -> ProjectionSignature:
    if len(s) == 0:
        raise EmptySetError("signature of an empty point set")
    if not is_convex_lattice_set(s):
        raise NotConvexLatticeSetError("signature requires a convex lattice set")
    points = s if dilation == 1 else dilated_lattice_points(s, dilation)
    return signature_of_points(points)


def polygon_signature(p: ConvexLatticePolygon, dilation: int = 1) -> ProjectionSignature:
    return signature_of_points(lattice_points(p, dilation))


def signatures_equal(a: ProjectionSignature, b: ProjectionSignature) -> bool:
    if a.total != b.total:
        return False
    keys = a.as_dict.keys() | b.as_dict.keys()
    return all(a.count(key) == b.count(key) for key in keys)


def first_difference(
    a: ProjectionSignature, b: ProjectionSignature
) -> PrimitiveDirection | None:
    """按字典序返回第一个计数不同的方向；只有 total 不同或完全相同时返回 None。"""
    for key in sorted(a.as_dict.keys() | b.as_dict.keys()):
        if a.count(key) != b.count(key):
            return key
    return None
