"""闭式公式与定理检查器。

- 边方向计数公式：|(K∩Z²)|u⊥| = W(K,u) + 1，u 为边方向。
- 加倍条件与其结论：2(c₁ − 1) = c₂ − 1 ⇒ c₁ = W + 1。
- cup 算子 conv(A ∪ B) 与支撑值 / 宽度的最大值恒等式。
- 由边方向宽度重建多边形（平板交），以及宽度唯一性。
- 两个签名（1 倍与 2 倍）都相同则多边形相同的唯一性检查。
"""

from __future__ import annotations

import json
import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any

import numpy as np

from latticexray.errors import (
    DirectionNotInD1Error,
    LatticeError,
    NonIntegerVertexError,
    NotAnEdgeDirectionError,
    TheoremViolationError,
    UnboundedError,
)
from latticexray.lattice_core import (
    ConvexLatticePolygon,
    LatticePoint,
    PointSet,
    PrimitiveDirection,
    difference_directions,
    edge_directions,
    lattice_points,
    monotone_chain,
)
from latticexray.projection import (
    ProjectionSignature,
    fibre_counts,
    first_difference,
    integer_width,
    polygon_signature,
    projection_count,
    signatures_equal,
)

LOGGER = logging.getLogger(__name__)

# 签名比较函数的统一签名；验证 harness 灵敏度时会替换成弱化版本
SignatureComparator = Callable[[ProjectionSignature, ProjectionSignature], bool]


@dataclass(frozen=True)
class UniquenessVerdict:
    equal_polygons: bool
    first_signature_match: bool
    dilate_signature_match: bool
    witness_direction: PrimitiveDirection | None = None
    # 只在两条边方向集合与一个 D₁ 外方向上比较的结果
    reduced_direction_match: bool | None = None

    @property
    def theorem_violation(self) -> bool:
        return (
            self.first_signature_match
            and self.dilate_signature_match
            and not self.equal_polygons
        )

    def to_dict(self) -> dict[str, Any]:
        witness = self.witness_direction
        return {
            "kind": "uniqueness",
            "equal_polygons": self.equal_polygons,
            "first_signature_match": self.first_signature_match,
            "dilate_signature_match": self.dilate_signature_match,
            "reduced_direction_match": self.reduced_direction_match,
            "witness_direction": witness.as_list() if witness else None,
            "theorem_violation": self.theorem_violation,
        }


def edge_formula_count(p: ConvexLatticePolygon, u: PrimitiveDirection) -> int:
    """边方向上的计数公式 W + 1，并与暴力投影计数核对。"""
    if u not in edge_directions(p):
        raise NotAnEdgeDirectionError(f"direction {u} is not parallel to an edge")
    formula = integer_width(p, u) + 1
    brute = projection_count(lattice_points(p, 1), u)
    if formula != brute:
        raise TheoremViolationError(
            "edge formula disagrees with the projection count",
            witness={"polygon": p.as_lists(), "direction": u.as_list(),
                     "formula": formula, "projection_count": brute},
        )
    return formula


def _require_d1(points: PointSet, u: PrimitiveDirection) -> None:
    if u not in difference_directions(points):
        raise DirectionNotInD1Error(f"direction {u} is not spanned by two lattice points")


def lemma35_applies(p: ConvexLatticePolygon, u: PrimitiveDirection) -> bool:
    """加倍条件 2(|K∩Z²|u⊥| − 1) = |2K∩Z²|u⊥| − 1。"""
    points = lattice_points(p, 1)
    _require_d1(points, u)
    first = projection_count(points, u)
    doubled = projection_count(lattice_points(p, 2), u)
    return 2 * (first - 1) == doubled - 1


def lemma35_conclusion_holds(p: ConvexLatticePolygon, u: PrimitiveDirection) -> bool:
    points = lattice_points(p, 1)
    _require_d1(points, u)
    return projection_count(points, u) == integer_width(p, u) + 1


def cup(a: ConvexLatticePolygon, b: ConvexLatticePolygon) -> ConvexLatticePolygon:
    """A ∪̿ B := conv(A ∪ B)；两个中心对称多边形的凸包仍中心对称。"""
    return ConvexLatticePolygon.from_points(a.vertices + b.vertices)


def edge_width_table(p: ConvexLatticePolygon) -> list[tuple[PrimitiveDirection, int]]:
    return [(u, integer_width(p, u)) for u in sorted(edge_directions(p))]


def reconstruct_from_widths(
    entries: Iterable[tuple[PrimitiveDirection, int]],
) -> ConvexLatticePolygon:
    """平板 {x : 2·|a·y − b·x| ≤ W} 的交，按精确有理数求顶点。"""
    table = list(entries)
    if not table:
        raise UnboundedError("no width entries: the slab intersection is the whole plane")
    seen: set[PrimitiveDirection] = set()
    for u, width in table:
        if width <= 0:
            raise LatticeError(f"width at {u} must be positive, got {width}")
        if u in seen:
            raise LatticeError(f"direction {u} listed twice")
        seen.add(u)
    if len(table) < 2:
        raise UnboundedError("a single slab direction leaves the intersection unbounded")

    # 每个方向两条边界线 a·y − b·x = ±W/2
    lines = [(u.a, u.b, Fraction(sign * width, 2)) for u, width in table for sign in (1, -1)]
    candidates: set[tuple[Fraction, Fraction]] = set()
    for (a1, b1, c1), (a2, b2, c2) in combinations(lines, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        x = (c1 * a2 - a1 * c2) / det
        y = (b2 * c1 - b1 * c2) / det
        if all(2 * abs(u.a * y - u.b * x) <= width for u, width in table):
            candidates.add((x, y))

    hull = monotone_chain(candidates)
    for x, y in hull:
        if x.denominator != 1 or y.denominator != 1:
            raise NonIntegerVertexError(
                f"slab intersection has a non-lattice vertex ({x}, {y})",
                vertex=(str(x), str(y)),
            )
    return ConvexLatticePolygon(tuple(LatticePoint(int(x), int(y)) for x, y in hull))


def widths_agree_on_edges(left: ConvexLatticePolygon, right: ConvexLatticePolygon) -> bool:
    directions = edge_directions(left) | edge_directions(right)
    return all(integer_width(left, u) == integer_width(right, u) for u in directions)


def reduced_direction_set(
    left: ConvexLatticePolygon, right: ConvexLatticePolygon
) -> tuple[PrimitiveDirection, ...]:
    """E_K ∪ E_L 再加一个不在 2K、2L 的 D₁ 中的方向 ξ = (1, 2c+1)。"""
    # 2K、2L 的差向量坐标绝对值不超过 2c
    c = 2 * max(left.max_abs, right.max_abs)
    xi = PrimitiveDirection(1, 2 * c + 1)
    return tuple(sorted(edge_directions(left) | edge_directions(right) | {xi}))


def reduced_signature_match(left: ConvexLatticePolygon, right: ConvexLatticePolygon) -> bool:
    directions = np.array(
        [u.as_tuple() for u in reduced_direction_set(left, right)], dtype=np.int64
    )
    for dilation in (1, 2):
        counts_left = fibre_counts(lattice_points(left, dilation), directions)
        counts_right = fibre_counts(lattice_points(right, dilation), directions)
        if not np.array_equal(counts_left, counts_right):
            return False
    return True


def _width_witness(
    left: ConvexLatticePolygon, right: ConvexLatticePolygon
) -> PrimitiveDirection | None:
    for u in sorted(edge_directions(left) | edge_directions(right)):
        if integer_width(left, u) != integer_width(right, u):
            return u
    return None


def uniqueness_check(
    left: ConvexLatticePolygon,
    right: ConvexLatticePolygon,
    comparator: SignatureComparator = signatures_equal,
) -> UniquenessVerdict:
    first_left, first_right = polygon_signature(left, 1), polygon_signature(right, 1)
    second_left, second_right = polygon_signature(left, 2), polygon_signature(right, 2)
    equal = left == right

    witness = first_difference(first_left, first_right) or first_difference(
        second_left, second_right
    )
    if witness is None and not equal:
        witness = _width_witness(left, right)

    verdict = UniquenessVerdict(
        equal_polygons=equal,
        first_signature_match=comparator(first_left, first_right),
        dilate_signature_match=comparator(second_left, second_right),
        witness_direction=witness,
        reduced_direction_match=reduced_signature_match(left, right),
    )
    if verdict.theorem_violation:
        # 违反以数据形式返回，由调用方决定是否升级为异常
        LOGGER.error(
            json.dumps(
                {
                    "event": "theorem_violation",
                    "left": left.as_lists(),
                    "right": right.as_lists(),
                    **verdict.to_dict(),
                },
                ensure_ascii=False,
            )
        )
    return verdict
