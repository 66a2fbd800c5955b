from __future__ import annotations

import pytest

from latticexray.errors import (
    DirectionNotInD1Error,
    LatticeError,
    NonIntegerVertexError,
    NotAnEdgeDirectionError,
    UnboundedError,
)
from latticexray.lattice_core import ConvexLatticePolygon, PrimitiveDirection
from latticexray.theorems import (
    cup,
    edge_formula_count,
    edge_width_table,
    lemma35_applies,
    lemma35_conclusion_holds,
    reconstruct_from_widths,
    reduced_direction_set,
    reduced_signature_match,
    uniqueness_check,
    widths_agree_on_edges,
)


def _widths(*rows: tuple[int, int, int]) -> list[tuple[PrimitiveDirection, int]]:
    return [(PrimitiveDirection(a, b), w) for a, b, w in rows]


def test_edge_formula_on_hexagon(hexagon) -> None:
    assert edge_formula_count(hexagon, PrimitiveDirection(1, 0)) == 3
    assert edge_formula_count(hexagon, PrimitiveDirection(1, 1)) == 5
    assert edge_formula_count(hexagon, PrimitiveDirection(-1, 1)) == 5
    with pytest.raises(NotAnEdgeDirectionError):
        edge_formula_count(hexagon, PrimitiveDirection(0, 1))


def test_doubling_condition_on_square(square, diamond) -> None:
    for u in (PrimitiveDirection(1, 0), PrimitiveDirection(1, 1)):
        assert lemma35_applies(square, u)
        assert lemma35_conclusion_holds(square, u)
    with pytest.raises(DirectionNotInD1Error):
        lemma35_applies(diamond, PrimitiveDirection(1, 2))


def test_cup_is_hull_of_union(square, diamond, slanted) -> None:
    assert cup(diamond, square) == square
    assert cup(diamond, slanted) == ConvexLatticePolygon.from_vertices(
        [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
    )


def test_cup_of_doubled_diamond_and_square(square, diamond) -> None:
    doubled = diamond.scale(2)
    joined = cup(doubled, square)
    # (±1,±1) 落在 2·diamond 的边上，凸包仍是 4 个顶点
    assert joined == doubled
    assert joined.as_lists() == [[-2, 0], [0, -2], [2, 0], [0, 2]]


def test_reconstruct_round_trip(hexagon, parallelogram) -> None:
    for polygon in (hexagon, parallelogram):
        assert reconstruct_from_widths(edge_width_table(polygon)) == polygon
    square = reconstruct_from_widths(_widths((1, 0, 2), (0, 1, 2)))
    assert square.as_lists() == [[-1, -1], [1, -1], [1, 1], [-1, 1]]


def test_reconstruct_error_cases() -> None:
    with pytest.raises(UnboundedError):
        reconstruct_from_widths([])
    with pytest.raises(UnboundedError):
        reconstruct_from_widths(_widths((1, 0, 2)))
    with pytest.raises(LatticeError):
        reconstruct_from_widths(_widths((1, 0, 2), (1, 0, 4)))
    with pytest.raises(LatticeError):
        reconstruct_from_widths(_widths((1, 0, 0), (0, 1, 2)))
    with pytest.raises(NonIntegerVertexError) as info:
        reconstruct_from_widths(_widths((1, 0, 1), (0, 1, 1)))
    assert info.value.vertex == ("-1/2", "-1/2")


def test_edge_widths_separate_polygons(square, diamond) -> None:
    assert widths_agree_on_edges(square, square)
    assert not widths_agree_on_edges(square, diamond)


def test_reduced_direction_set_adds_one_outside_direction(square, diamond) -> None:
    directions = [u.as_tuple() for u in reduced_direction_set(diamond, square)]
    assert directions == [(-1, 1), (0, 1), (1, 0), (1, 1), (1, 5)]
    assert reduced_signature_match(square, square)
    assert not reduced_signature_match(diamond, square)


def test_uniqueness_check_distinguishes_equal_totals(diamond, slanted) -> None:
    verdict = uniqueness_check(diamond, slanted)
    assert not verdict.equal_polygons
    assert not verdict.first_signature_match
    assert verdict.witness_direction == PrimitiveDirection(-1, 1)
    assert not verdict.theorem_violation
    assert verdict.to_dict()["witness_direction"] == [-1, 1]


def test_uniqueness_check_of_identical_polygons(hexagon) -> None:
    verdict = uniqueness_check(hexagon, hexagon)
    assert verdict.equal_polygons
    assert verdict.first_signature_match and verdict.dilate_signature_match
    assert verdict.witness_direction is None
    assert verdict.reduced_direction_match


def test_weakened_comparator_reports_violation(diamond, slanted, caplog) -> None:
    # 只比较总数时，两者在 1 倍和 2 倍下都是 5 / 13 个点
    verdict = uniqueness_check(diamond, slanted, comparator=lambda a, b: a.total == b.total)
    assert verdict.theorem_violation
    assert "theorem_violation" in caplog.text
