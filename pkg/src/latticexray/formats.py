"""JSON 文件格式：点集 {"points": [[x,y], ...]}、多边形 {"polygon": [[x,y], ...]}、
宽度表 {"widths": [[a,b,W], ...]}。解析错误带文件、行号与字段路径。"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from latticexray.errors import InputFormatError, LatticeError
from latticexray.lattice_core import (
    ConvexLatticePolygon,
    IntPair,
    PointSet,
    PrimitiveDirection,
    is_convex_lattice_set,
    is_origin_symmetric,
    lattice_points,
    primitive,
)


def load_json(path: str | Path) -> Any:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(
            f"{exc.msg} (column {exc.colno})", path=str(path), line=exc.lineno
        ) from None


def dump_json(payload: Any) -> str:
    # 键顺序保持插入顺序，保证相同输入逐字节相同
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":"))


def _int(value: Any, field: str, path: str | None) -> int:
    # JSON 的 true/false 会被 Python 当成 int，这里显式拒绝
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputFormatError(f"expected an integer, got {value!r}", path=path, field=field)
    return value


def parse_pair(value: Any, field: str, path: str | None = None) -> IntPair:
    if not isinstance(value, list) or len(value) != 2:
        raise InputFormatError(f"expected [x, y], got {value!r}", path=path, field=field)
    return (_int(value[0], f"{field}[0]", path), _int(value[1], f"{field}[1]", path))


def _pairs(obj: Any, name: str, path: str | None) -> list[IntPair]:
    items = obj.get(name)
    if not isinstance(items, list):
        raise InputFormatError(f"field {name!r} must be a list", path=path, field=name)
    return [parse_pair(item, f"{name}[{i}]", path) for i, item in enumerate(items)]


def parse_shape(obj: Any, path: str | None = None) -> PointSet | ConvexLatticePolygon:
    if not isinstance(obj, dict):
        raise InputFormatError("top-level value must be a JSON object", path=path)
    if "polygon" in obj:
        vertices = _pairs(obj, "polygon", path)
        try:
            return ConvexLatticePolygon.from_vertices(vertices)
        except LatticeError as exc:
            raise InputFormatError(str(exc), path=path, field="polygon") from None
    if "points" in obj:
        points = _pairs(obj, "points", path)
        if not points:
            raise InputFormatError("point set is empty", path=path, field="points")
        return PointSet.of(points)
    raise InputFormatError("expected a 'points' or 'polygon' field", path=path)


def load_shape(path: str | Path) -> PointSet | ConvexLatticePolygon:
    return parse_shape(load_json(path), str(path))


def load_point_set(path: str | Path) -> PointSet:
    """多边形文件按其格点集 K ∩ Z² 读入。"""
    shape = load_shape(path)
    if isinstance(shape, ConvexLatticePolygon):
        return lattice_points(shape, 1)
    return shape


def load_polygon(path: str | Path) -> ConvexLatticePolygon:
    """多边形文件直接读入；点集文件必须是中心对称、二维的凸格点集。"""
    shape = load_shape(path)
    if isinstance(shape, ConvexLatticePolygon):
        return shape
    if not is_convex_lattice_set(shape):
        raise InputFormatError("point set is not a convex lattice set", path=str(path))
    if not is_origin_symmetric(shape):
        raise InputFormatError("point set is not origin-symmetric", path=str(path))
    try:
        return ConvexLatticePolygon.from_points(shape)
    except LatticeError as exc:
        raise InputFormatError(str(exc), path=str(path)) from None


def load_widths(path: str | Path) -> list[tuple[PrimitiveDirection, int]]:
    obj = load_json(path)
    where = str(path)
    if not isinstance(obj, dict) or not isinstance(obj.get("widths"), list):
        raise InputFormatError("expected an object with a 'widths' list", path=where)
    entries = []
    for i, item in enumerate(obj["widths"]):
        field = f"widths[{i}]"
        if not isinstance(item, list) or len(item) != 3:
            raise InputFormatError(f"expected [a, b, W], got {item!r}", path=where, field=field)
        a, b, width = (_int(v, f"{field}[{j}]", where) for j, v in enumerate(item))
        try:
            entries.append((primitive((a, b)), width))
        except LatticeError as exc:
            raise InputFormatError(str(exc), path=where, field=field) from None
    return entries


def parse_direction(text: str) -> PrimitiveDirection:
    """命令行方向参数 `a,b`，任意整数形式，返回规范本原方向。"""
    parts = text.split(",")
    if len(parts) != 2:
        raise InputFormatError(f"direction must look like 'a,b', got {text!r}", field="--dir")
    try:
        a, b = (int(part.strip()) for part in parts)
    except ValueError:
        raise InputFormatError(f"direction components must be integers: {text!r}",
                               field="--dir") from None
    return primitive((a, b))


def polygon_to_json(p: ConvexLatticePolygon) -> dict[str, Any]:
    return {"polygon": p.as_lists()}


def widths_to_json(entries: list[tuple[PrimitiveDirection, int]]) -> dict[str, Any]:
    return {"widths": [[u.a, u.b, width] for u, width in entries]}
