"""Z² 上的精确整数原语。

本模块负责：
1) 格点、规范本原方向、点集与中心对称凸整多边形四种不可变类型。
2) 单调链凸包、凸多边形的行扫描格点枚举。
3) 凸格点集 / 中心对称判定、D₁ 与边方向集合、Pick 定理。

全程不使用浮点数；坐标限制在有符号 64 位范围内，越界即 LatticeOverflowError。
"""

from __future__ import annotations

import math
import operator
from bisect import bisect_left
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Any

import numpy as np

from latticexray.errors import (
    EmptySetError,
    InvalidPolygonError,
    LatticeError,
    LatticeOverflowError,
    ZeroVectorError,
)

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

# 整数二元组与 2×2 整数矩阵
IntPair = tuple[int, int]
Matrix = tuple[tuple[int, int], tuple[int, int]]


def checked(value: int) -> int:
    """确认整数落在有符号 64 位范围内，原样返回。"""
    if not INT64_MIN <= value <= INT64_MAX:
        raise LatticeOverflowError(f"integer {value} exceeds the signed 64-bit range")
    return value


def require_int64_bound(bound: int, what: str) -> None:
    """向量化路径的前置检查：bound 是待计算量绝对值的上界。"""
    if bound > INT64_MAX:
        raise LatticeOverflowError(f"{what} may exceed the signed 64-bit range (bound {bound})")


def _as_int(value: Any, name: str) -> int:
    # bool 是 int 子类，这里显式拒绝
    if isinstance(value, bool):
        raise TypeError(f"{name} must be an integer, got bool")
    try:
        return operator.index(value)
    except TypeError:
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}") from None


@dataclass(frozen=True, order=True)
class LatticePoint:
    x: int
    y: int

    def __post_init__(self) -> None:
        # numpy 整数统一转为 Python int，再做范围检查
        object.__setattr__(self, "x", checked(_as_int(self.x, "x")))
        object.__setattr__(self, "y", checked(_as_int(self.y, "y")))

    def __add__(self, other: LatticePoint) -> LatticePoint:
        return LatticePoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: LatticePoint) -> LatticePoint:
        return LatticePoint(self.x - other.x, self.y - other.y)

    def __neg__(self) -> LatticePoint:
        return LatticePoint(-self.x, -self.y)

    def scale(self, k: int) -> LatticePoint:
        return LatticePoint(k * self.x, k * self.y)

    def cross(self, other: LatticePoint) -> int:
        return checked(self.x * other.y - self.y * other.x)

    def dot(self, v: IntPair) -> int:
        return checked(v[0] * self.x + v[1] * self.y)

    def as_tuple(self) -> IntPair:
        return (self.x, self.y)

    def as_list(self) -> list[int]:
        return [self.x, self.y]


@dataclass(frozen=True, order=True)
class PrimitiveDirection:
    """直线方向 u 的规范本原代表：gcd(|a|,|b|)=1，且 b>0 或 (b=0 且 a>0)。"""

    a: int
    b: int

    def __post_init__(self) -> None:
        a = _as_int(self.a, "a")
        b = _as_int(self.b, "b")
        if a == 0 and b == 0:
            raise ZeroVectorError("direction must be a nonzero vector")
        if math.gcd(a, b) != 1:
            raise LatticeError(f"direction ({a},{b}) is not primitive")
        if not (b > 0 or (b == 0 and a > 0)):
            raise LatticeError(f"direction ({a},{b}) is not in canonical half-plane form")
        object.__setattr__(self, "a", checked(a))
        object.__setattr__(self, "b", checked(b))

    def form(self, p: LatticePoint) -> int:
        """线性型 a·y − b·x = ⟨(−b, a), p⟩；两点投影到 u⊥ 上重合当且仅当取值相同。"""
        return checked(self.a * p.y - self.b * p.x)

    def as_tuple(self) -> IntPair:
        return (self.a, self.b)

    def as_list(self) -> list[int]:
        return [self.a, self.b]

    def __str__(self) -> str:
        return f"{self.a},{self.b}"


def _pair(v: IntPair | LatticePoint | Sequence[int]) -> IntPair:
    if isinstance(v, LatticePoint):
        return v.as_tuple()
    if isinstance(v, PrimitiveDirection):
        return v.as_tuple()
    if len(v) != 2:
        raise LatticeError(f"expected an integer pair, got {len(v)} components")
    return (_as_int(v[0], "v[0]"), _as_int(v[1], "v[1]"))


def _point(p: LatticePoint | IntPair | Sequence[int]) -> LatticePoint:
    return p if isinstance(p, LatticePoint) else LatticePoint(*_pair(p))


def primitive(v: IntPair | LatticePoint | Sequence[int]) -> PrimitiveDirection:
    """把任意非零整数向量化为规范本原方向，满足 primitive(k·v) = primitive(v)。"""
    a, b = _pair(v)
    if a == 0 and b == 0:
        raise ZeroVectorError("direction must be a nonzero vector")
    g = math.gcd(a, b)
    a, b = a // g, b // g
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    return PrimitiveDirection(a, b)


def check_unimodular(matrix: Matrix) -> Matrix:
    (m11, m12), (m21, m22) = matrix
    det = m11 * m22 - m12 * m21
    if det not in (1, -1):
        raise LatticeError(f"matrix {matrix} is not unimodular (det {det})")
    return matrix


def apply_matrix(matrix: Matrix, v: IntPair | LatticePoint) -> IntPair:
    (m11, m12), (m21, m22) = matrix
    x, y = _pair(v)
    return (checked(m11 * x + m12 * y), checked(m21 * x + m22 * y))


@dataclass(frozen=True)
class PointSet:
    """有限格点集，按字典序存储且无重复，因此结构相等即集合相等。"""

    points: tuple[LatticePoint, ...]

    def __post_init__(self) -> None:
        pts = tuple(_point(p) for p in self.points)
        if any(pts[i] >= pts[i + 1] for i in range(len(pts) - 1)):
            raise LatticeError("PointSet points must be strictly increasing; use PointSet.of()")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, points: Iterable[LatticePoint | IntPair | Sequence[int]]) -> PointSet:
        return cls(tuple(sorted({_point(p) for p in points})))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[LatticePoint]:
        return iter(self.points)

    def __contains__(self, item: object) -> bool:
        if not isinstance(item, LatticePoint):
            return False
        i = bisect_left(self.points, item)
        return i < len(self.points) and self.points[i] == item

    @cached_property
    def coords(self) -> np.ndarray:
        """(n, 2) 的 int64 坐标矩阵，供向量化计数使用。"""
        return np.array([p.as_tuple() for p in self.points], dtype=np.int64).reshape(-1, 2)

    @cached_property
    def max_abs(self) -> int:
        return max((max(abs(p.x), abs(p.y)) for p in self.points), default=0)

    def negate(self) -> PointSet:
        return PointSet.of(-p for p in self.points)

    def scale(self, k: int) -> PointSet:
        return PointSet.of(p.scale(k) for p in self.points)

    def transform(self, matrix: Matrix) -> PointSet:
        check_unimodular(matrix)
        return PointSet.of(apply_matrix(matrix, p) for p in self.points)

    def as_lists(self) -> list[list[int]]:
        return [p.as_list() for p in self.points]


def _cross3(o: Sequence[Any], a: Sequence[Any], b: Sequence[Any]) -> Any:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def monotone_chain(points: Iterable[Sequence[Any]]) -> list[tuple[Any, Any]]:
    """Andrew 单调链：逆时针、从字典序最小点开始、去掉共线点。

    坐标可以是 int 或 Fraction；维数 < 2 时返回 1 或 2 个端点。
    """
    pts = sorted({(p[0], p[1]) for p in points})
    if len(pts) <= 2:
        return pts
    lower: list[tuple[Any, Any]] = []
    for p in pts:
        while len(lower) >= 2 and _cross3(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[Any, Any]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross3(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    # 全部共线时 lower/upper 退化为同一条线段
    return hull if len(hull) >= 3 else sorted(set(hull))


def convex_hull(s: PointSet) -> list[LatticePoint]:
    if len(s) == 0:
        raise EmptySetError("convex hull of an empty point set")
    return [LatticePoint(x, y) for x, y in monotone_chain(p.as_tuple() for p in s)]


def hull_lattice_points(hull: Sequence[IntPair]) -> list[IntPair]:
    """枚举 conv(hull) ∩ Z²，按字典序返回。

    hull 必须是 monotone_chain 的输出：1 个点、线段端点，或逆时针严格凸多边形。
    二维情形逐行扫描，每条边给出一个整数半平面约束 dy·x ≤ rhs。
    """
    if len(hull) == 1:
        return [tuple(hull[0])]
    if len(hull) == 2:
        (px, py), (qx, qy) = hull
        g = math.gcd(qx - px, qy - py)
        sx, sy = (qx - px) // g, (qy - py) // g
        return sorted((px + i * sx, py + i * sy) for i in range(g + 1))

    xs = [v[0] for v in hull]
    ys = [v[1] for v in hull]
    edges = list(zip(hull, [*hull[1:], hull[0]]))
    out: list[IntPair] = []
    for y in range(min(ys), max(ys) + 1):
        lo, hi = min(xs), max(xs)
        for (px, py), (qx, qy) in edges:
            dx, dy = qx - px, qy - py
            # 内侧条件 dx·(y−py) − dy·(x−px) ≥ 0
            rhs = dx * (y - py) + dy * px
            if dy > 0:
                hi = min(hi, rhs // dy)
            elif dy < 0:
                lo = max(lo, -((-rhs) // dy))
            elif dx * (y - py) < 0:
                lo, hi = 1, 0
                break
        out.extend((x, y) for x in range(lo, hi + 1))
    out.sort()
    return out


def is_convex_lattice_set(s: PointSet) -> bool:
    if len(s) == 0:
        raise EmptySetError("convexity of an empty point set")
    # s ⊆ conv(s) ∩ Z² 恒成立，数量相等即集合相等
    hull = monotone_chain(p.as_tuple() for p in s)
    return len(hull_lattice_points(hull)) == len(s)


def is_origin_symmetric(s: PointSet) -> bool:
    if len(s) == 0:
        raise EmptySetError("symmetry of an empty point set")
    return all(-p in s for p in s)


def dilated_lattice_points(s: PointSet, dilation: int) -> PointSet:
    """(k·conv(s)) ∩ Z²；注意不是 k·(conv(s) ∩ Z²)。"""
    if len(s) == 0:
        raise EmptySetError("dilation of an empty point set")
    if dilation < 1:
        raise LatticeError(f"dilation must be a positive integer, got {dilation}")
    hull = monotone_chain((dilation * p.x, dilation * p.y) for p in s)
    return PointSet.of(hull_lattice_points(hull))


@dataclass(frozen=True)
class ConvexLatticePolygon:
    """中心对称、内部非空的凸整多边形。

    vertices 逆时针严格凸，从字典序最小的顶点开始；共线的边上点不作为顶点保存。
    """

    vertices: tuple[LatticePoint, ...]

    def __post_init__(self) -> None:
        verts = tuple(_point(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 3:
            raise InvalidPolygonError(
                f"polygon needs a nonempty interior (>= 3 vertices), got {len(verts)}"
            )
        as_tuples = [v.as_tuple() for v in verts]
        if monotone_chain(as_tuples) != as_tuples:
            raise InvalidPolygonError(
                "vertices must be strictly convex, counterclockwise and start at the "
                "lexicographically smallest vertex"
            )
        vertex_set = set(verts)
        if any(-v not in vertex_set for v in verts):
            raise InvalidPolygonError("polygon is not origin-symmetric")

    @classmethod
    def from_vertices(cls, vertices: Sequence[LatticePoint | IntPair]) -> ConvexLatticePolygon:
        """逆时针顶点序列，起点任意；旋转到规范起点。"""
        verts = [_point(v) for v in vertices]
        if not verts:
            raise InvalidPolygonError("polygon needs at least 3 vertices, got 0")
        start = verts.index(min(verts))
        return cls(tuple(verts[start:] + verts[:start]))

    @classmethod
    def from_points(
        cls, points: Iterable[LatticePoint | IntPair | Sequence[int]]
    ) -> ConvexLatticePolygon:
        hull = monotone_chain(_pair(p) for p in points)
        if len(hull) < 3:
            raise InvalidPolygonError("convex hull has an empty interior")
        return cls(tuple(LatticePoint(x, y) for x, y in hull))

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[LatticePoint]:
        verts = self.vertices
        return [verts[(i + 1) % len(verts)] - verts[i] for i in range(len(verts))]

    def scale(self, k: int) -> ConvexLatticePolygon:
        if k < 1:
            raise LatticeError(f"dilation must be a positive integer, got {k}")
        return ConvexLatticePolygon(tuple(v.scale(k) for v in self.vertices))

    def transform(self, matrix: Matrix) -> ConvexLatticePolygon:
        check_unimodular(matrix)
        # det = −1 时方向反转，交给凸包重新排序
        return ConvexLatticePolygon.from_points(apply_matrix(matrix, v) for v in self.vertices)

    @cached_property
    def max_abs(self) -> int:
        return max(max(abs(v.x), abs(v.y)) for v in self.vertices)

    def as_lists(self) -> list[list[int]]:
        return [v.as_list() for v in self.vertices]


def lattice_points(p: ConvexLatticePolygon, dilation: int = 1) -> PointSet:
    if dilation < 1:
        raise LatticeError(f"dilation must be a positive integer, got {dilation}")
    hull = [(dilation * v.x, dilation * v.y) for v in p.vertices]
    return PointSet.of(hull_lattice_points(hull))


def canonical_directions(vectors: np.ndarray) -> np.ndarray:
    """把一批非零整数向量化为去重后的规范本原方向，(m, 2) int64，按字典序。"""
    if len(vectors) == 0:
        return np.empty((0, 2), dtype=np.int64)
    g = np.gcd(vectors[:, 0], vectors[:, 1])
    dirs = vectors // g[:, None]
    flip = (dirs[:, 1] < 0) | ((dirs[:, 1] == 0) & (dirs[:, 0] < 0))
    dirs[flip] = -dirs[flip]
    return np.unique(dirs, axis=0)


def difference_direction_array(s: PointSet) -> np.ndarray:
    n = len(s)
    if n < 2:
        return np.empty((0, 2), dtype=np.int64)
    require_int64_bound(2 * s.max_abs, "difference vector")
    coords = s.coords
    i, j = np.triu_indices(n, k=1)
    diffs = np.unique(coords[j] - coords[i], axis=0)
    return canonical_directions(diffs)


def difference_directions(s: PointSet) -> frozenset[PrimitiveDirection]:
    """D₁：点对差向量的规范本原方向；单点集为空。"""
    if len(s) == 0:
        raise EmptySetError("difference directions of an empty point set")
    return frozenset(
        PrimitiveDirection(int(a), int(b)) for a, b in difference_direction_array(s)
    )


def edge_directions(p: ConvexLatticePolygon) -> frozenset[PrimitiveDirection]:
    """E_K：2n 条边恰好给出 n 个互不相同的规范方向。"""
    return frozenset(primitive(e) for e in p.edges())


def pick_area2(p: ConvexLatticePolygon) -> int:
    """鞋带公式给出的两倍面积（精确整数）。"""
    verts = p.vertices
    total = 0
    for i, v in enumerate(verts):
        total += v.cross(verts[(i + 1) % len(verts)])
    return checked(total)


def boundary_lattice_count(p: ConvexLatticePolygon) -> int:
    return sum(math.gcd(e.x, e.y) for e in p.edges())


def pick_identity_holds(p: ConvexLatticePolygon) -> bool:
    # 2·area = 2·|K∩Z²| − |∂K∩Z²| − 2
    total = len(lattice_points(p, 1))
    return pick_area2(p) == 2 * total - boundary_lattice_count(p) - 2


def unimodular_invariants(p: ConvexLatticePolygon) -> dict[str, int]:
    """GL₂(Z) 不变量，只用于报告里的注释列，不做等价类判定。"""
    return {
        "vertices": len(p.vertices),
        "area2": pick_area2(p),
        "lattice_points": len(lattice_points(p, 1)),
        "boundary_points": boundary_lattice_count(p),
    }
