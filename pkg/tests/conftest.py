from __future__ import annotations

# 写入临时输入文件
import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from latticexray.lattice_core import ConvexLatticePolygon

# 环境隔离 fixture 对每个用例生效，hypothesis 需放行；枚举类用例耗时不稳定，不设 deadline
settings.register_profile(
    "latticexray",
    suppress_health_check=[HealthCheck.function_scoped_fixture],
    deadline=None,
)
settings.load_profile("latticexray")


# 所有测试默认单进程、无索引、无 S3，避免受本机环境变量影响
@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch) -> None:
    monkeypatch.setenv("LATTICE_XRAY_THREADS", "1")
    for name in ("LATTICE_XRAY_INDEX", "LATTICE_XRAY_REPORT_BUCKET", "LATTICE_XRAY_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


# conv{(±1,±1)}：9 个格点
@pytest.fixture
def square() -> ConvexLatticePolygon:
    return ConvexLatticePolygon.from_vertices([(-1, -1), (1, -1), (1, 1), (-1, 1)])


# conv{(±1,0),(0,±1)}：5 个格点
@pytest.fixture
def diamond() -> ConvexLatticePolygon:
    return ConvexLatticePolygon.from_vertices([(1, 0), (0, 1), (-1, 0), (0, -1)])


# conv{(±2,0),(±1,±1)}：11 个格点，两倍面积 12
@pytest.fixture
def hexagon() -> ConvexLatticePolygon:
    return ConvexLatticePolygon.from_vertices([(2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1)])


# conv{±(1,0),±(1,1)}：与 diamond 的总数和坐标轴计数都相同
@pytest.fixture
def slanted() -> ConvexLatticePolygon:
    return ConvexLatticePolygon.from_vertices([(1, 0), (1, 1), (-1, 0), (-1, -1)])


# conv{±(1,0),±(3,2)}：9 个格点的细长平行四边形
@pytest.fixture
def parallelogram() -> ConvexLatticePolygon:
    return ConvexLatticePolygon.from_vertices([(1, 0), (3, 2), (-1, 0), (-3, -2)])


# 把对象写成 JSON 文件并返回路径字符串
@pytest.fixture
def write_json(tmp_path: Path):
    def _write(name: str, payload: object) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)

    return _write
