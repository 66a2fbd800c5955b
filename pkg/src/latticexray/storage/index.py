from __future__ import annotations

# 读取 / 追加索引文件
import json
from collections.abc import Iterable
from pathlib import Path

from latticexray.errors import InputFormatError, LatticeError
from latticexray.formats import dump_json, parse_pair
from latticexray.lattice_core import ConvexLatticePolygon


# 只追加的签名索引：每行 `key<TAB>polygon-json`
# 双签名模式的键形如 `k1|k2`，单签名键里不会出现 `|`，两种模式共用一个文件
class SignatureIndex:
    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)

    # 读出指定模式下已知的 多边形 -> 键 映射；文件不存在视为空索引
    def lookup(self, with_dilate: bool) -> dict[ConvexLatticePolygon, str]:
        if not self.path.exists():
            return {}
        known: dict[ConvexLatticePolygon, str] = {}
        with self.path.open(encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                key, sep, raw = line.partition("\t")
                if not sep:
                    raise InputFormatError("missing TAB separator", path=str(self.path),
                                           line=lineno)
                if ("|" in key) != with_dilate:
                    continue
                known[self._parse_polygon(raw, lineno)] = key
        return known

    # 追加写入；同一多边形重复写入时以最后一行为准
    def append(self, with_dilate: bool, entries: Iterable[tuple[ConvexLatticePolygon, str]]) -> int:
        count = 0
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as handle:
            for polygon, key in entries:
                if ("|" in key) != with_dilate:
                    raise ValueError(f"key {key!r} does not match with_dilate={with_dilate}")
                handle.write(f"{key}\t{dump_json(polygon.as_lists())}\n")
                count += 1
        return count

    def _parse_polygon(self, raw: str, lineno: int) -> ConvexLatticePolygon:
        try:
            vertices = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InputFormatError(exc.msg, path=str(self.path), line=lineno) from None
        if not isinstance(vertices, list):
            raise InputFormatError("polygon must be a vertex list", path=str(self.path),
                                   line=lineno)
        pairs = [parse_pair(v, f"vertices[{i}]", str(self.path)) for i, v in enumerate(vertices)]
        try:
            return ConvexLatticePolygon(tuple(pairs))
        except LatticeError as exc:
            raise InputFormatError(str(exc), path=str(self.path), line=lineno) from None
