from __future__ import annotations

from functools import partial

import pytest

from latticexray.errors import TheoremViolationError
from latticexray.lattice_core import ConvexLatticePolygon
from latticexray.search import (
    EnumerationSpec,
    enumerate_symmetric_polygons,
    find_collisions,
    rediscover_negative_answer,
    signature_key,
    verify_theorem12,
)
from latticexray.search.collisions import (
    class_reverifies,
    group_collisions,
    restricted_signature_key,
)
from latticexray.search.enumeration import candidate_directions, shards
from latticexray.search.oracle import subset_oracle
from latticexray.storage.index import SignatureIndex
from latticexray.theorems import uniqueness_check

AXIS_KEY = partial(restricted_signature_key, directions=((1, 0), (0, 1)))


def test_spec_validation() -> None:
    with pytest.raises(ValueError):
        EnumerationSpec(0)
    with pytest.raises(ValueError):
        EnumerationSpec(2, max_vertices=5)


def test_candidate_directions_are_angle_sorted() -> None:
    dirs = candidate_directions(1)
    assert dirs[0] == (1, 0)
    assert dirs[-1] == (-2, 1)
    assert len(dirs) == len(set(dirs))
    assert shards(EnumerationSpec(1))[0].multiplicity == 1


def test_radius_one_universe(diamond, square) -> None:
    polygons = list(enumerate_symmetric_polygons(EnumerationSpec(1)))
    assert len(polygons) == 8
    assert diamond in polygons and square in polygons
    assert sorted(len(p) for p in polygons) == [4, 4, 4, 4, 4, 4, 6, 6]


@pytest.mark.parametrize("radius", [1, 2])
def test_enumeration_matches_subset_oracle(radius) -> None:
    polygons = list(enumerate_symmetric_polygons(EnumerationSpec(radius)))
    # 每个多边形恰好出现一次
    assert len(polygons) == len(set(polygons))
    assert set(polygons) == set(subset_oracle(radius))


def test_vertex_cap_keeps_only_parallelograms() -> None:
    polygons = list(enumerate_symmetric_polygons(EnumerationSpec(2, max_vertices=4)))
    assert polygons
    assert all(len(p) == 4 for p in polygons)
    full = set(enumerate_symmetric_polygons(EnumerationSpec(2)))
    assert {p for p in full if len(p) == 4} == set(polygons)


def test_enumeration_order_is_independent_of_workers() -> None:
    spec = EnumerationSpec(2)
    assert list(enumerate_symmetric_polygons(spec, workers=1)) == list(
        enumerate_symmetric_polygons(spec, workers=2)
    )


def test_group_collisions_sorts_classes(diamond, square, slanted) -> None:
    classes = group_collisions([(square, "b"), (diamond, "a"), (slanted, "a"), (square, "c")])
    assert [c.key for c in classes] == ["a"]
    assert classes[0].polygons == (diamond, slanted)


def test_injected_duplicate_forms_one_class(diamond) -> None:
    report = find_collisions(EnumerationSpec(1), True, extra_polygons=(diamond,))
    assert len(report.collision_classes) == 1
    cls = report.collision_classes[0]
    assert cls.polygons == (diamond, diamond)
    assert class_reverifies(cls, True)
    assert report.polygons_enumerated == 9


def test_verify_uniqueness_at_radius_two() -> None:
    report = verify_theorem12(EnumerationSpec(2))
    assert report.collision_classes == ()
    assert report.to_dict()["kind"] == "collisions"


def test_weakened_key_is_caught_by_the_harness(diamond, slanted) -> None:
    with pytest.raises(TheoremViolationError) as info:
        verify_theorem12(EnumerationSpec(2), key_fn=AXIS_KEY)
    classes = info.value.witness["collision_classes"]
    assert classes
    members = [poly for cls in classes for poly in cls["polygons"]]
    assert diamond.as_lists() in members and slanted.as_lists() in members


def test_index_reuses_cached_keys(tmp_path) -> None:
    index = SignatureIndex(tmp_path / "signatures.idx")
    spec = EnumerationSpec(1)
    first = find_collisions(spec, True, index=index)
    lines = (tmp_path / "signatures.idx").read_text(encoding="utf-8").splitlines()
    assert len(lines) == 8

    second = find_collisions(spec, True, index=index)
    assert second == first
    assert (tmp_path / "signatures.idx").read_text(encoding="utf-8").splitlines() == lines
    # 单签名模式与双签名模式互不干扰
    assert index.lookup(False) == {}
    polygon = next(iter(index.lookup(True)))
    assert index.lookup(True)[polygon] == signature_key(polygon, True)


def test_weakened_key_never_touches_index(tmp_path) -> None:
    index = SignatureIndex(tmp_path / "signatures.idx")
    find_collisions(EnumerationSpec(1), False, key_fn=AXIS_KEY, index=index)
    assert not (tmp_path / "signatures.idx").exists()


def test_radius_one_has_no_first_signature_collision() -> None:
    record = rediscover_negative_answer(max_radius=1)
    payload = record.to_dict()
    assert record.status == "OPEN-DISCREPANCY"
    assert payload["polygons_per_radius"] == {"1": 8}
    assert payload["witness"] == [] and payload["radius"] is None


def test_rediscovery_finds_first_collision_at_radius_two() -> None:
    record = rediscover_negative_answer(max_radius=2)
    assert record.status == "FOUND"
    assert record.radius == 2
    left, right = record.witness
    assert left != right
    assert record.verdict.first_signature_match
    assert not record.verdict.dilate_signature_match
    assert not record.verdict.theorem_violation


def test_first_signature_classes_reverify_at_radius_two() -> None:
    report = find_collisions(EnumerationSpec(2), False)
    assert [len(c.polygons) for c in report.collision_classes] == [3, 3]
    assert all(class_reverifies(c, False) for c in report.collision_classes)
    # 只看 1 倍签名相同，加上 2 倍签名后即被区分
    assert not any(class_reverifies(c, True) for c in report.collision_classes)


def test_known_pair_shares_only_the_first_signature() -> None:
    left = ConvexLatticePolygon.from_vertices([(-2, -2), (1, -1), (2, 2), (-1, 1)])
    right = ConvexLatticePolygon.from_vertices([(-2, 0), (-1, -2), (2, 0), (1, 2)])
    verdict = uniqueness_check(left, right)
    assert not verdict.equal_polygons
    assert verdict.first_signature_match
    assert not verdict.dilate_signature_match


@pytest.mark.slow
def test_verify_uniqueness_at_radius_three() -> None:
    assert verify_theorem12(EnumerationSpec(3)).collision_classes == ()


@pytest.mark.slow
def test_collision_report_is_byte_identical_across_workers() -> None:
    from latticexray.formats import dump_json

    spec = EnumerationSpec(3)
    reports = {dump_json(find_collisions(spec, True, workers=w).to_dict()) for w in (1, 2, 8)}
    assert len(reports) == 1


@pytest.mark.slow
def test_rediscovery_up_to_radius_eight() -> None:
    record = rediscover_negative_answer(max_radius=8, workers=8)
    assert record.status == "FOUND"
    assert record.radius == 2
    assert record.witness == rediscover_negative_answer(max_radius=2).witness
