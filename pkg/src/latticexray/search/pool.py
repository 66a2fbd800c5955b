from __future__ import annotations

# 多进程执行器：计算是纯 CPU 的，线程池受 GIL 限制
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import TypeVar

from latticexray.settings import Settings

T = TypeVar("T")
R = TypeVar("R")


# 未显式指定时，进程数取 LATTICE_XRAY_THREADS
def resolve_workers(workers: int | None) -> int:
    if workers is None:
        return Settings.from_env().threads
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    return workers


# 按固定大小切分任务，切分结果与进程数无关
def chunked(items: Sequence[T], size: int) -> list[tuple[T, ...]]:
    return [tuple(items[i : i + size]) for i in range(0, len(items), size)]


# 保序 map：结果顺序只取决于输入顺序，单进程时直接在当前进程执行
def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int) -> list[R]:
    tasks = list(items)
    if workers <= 1 or len(tasks) <= 1:
        return [fn(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        return list(pool.map(fn, tasks))
