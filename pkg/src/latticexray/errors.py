"""格点工具包的异常层级。

输入/领域错误统一继承 LatticeError（ValueError 子类），由 CLI 映射为退出码 1；
定理被违反属于运行时事件，单独使用 TheoremViolationError，映射为退出码 2。
"""

from __future__ import annotations

from typing import Any


class LatticeError(ValueError):
    """所有输入与领域错误的基类。"""


class ZeroVectorError(LatticeError):
    pass


class EmptySetError(LatticeError):
    pass


class NotConvexLatticeSetError(LatticeError):
    pass


class InvalidPolygonError(LatticeError):
    pass


class NotAnEdgeDirectionError(LatticeError):
    pass


class DirectionNotInD1Error(LatticeError):
    pass


class UnboundedError(LatticeError):
    pass


class NonIntegerVertexError(LatticeError):
    # vertex 以 (分子, 分母) 形式保留，便于日志和报告
    def __init__(self, message: str, vertex: tuple[str, str] | None = None) -> None:
        super().__init__(message)
        self.vertex = vertex


class LatticeOverflowError(LatticeError):
    pass


class InputFormatError(LatticeError):
    """输入文件格式错误，携带文件、行号与字段路径。"""

    def __init__(
        self,
        message: str,
        *,
        path: str | None = None,
        line: int | None = None,
        field: str | None = None,
    ) -> None:
        self.path = path
        self.line = line
        self.field = field
        where = [part for part in (path, f"line {line}" if line else None, field) if part]
        super().__init__(f"{': '.join(where)}: {message}" if where else message)


class TheoremViolationError(RuntimeError):
    """穷举验证发现了定理反例；witness 是可直接序列化的 JSON 对象。"""

    def __init__(self, message: str, witness: dict[str, Any]) -> None:
        super().__init__(message)
        self.witness = witness
