from __future__ import annotations

# 读取环境变量
import os

# 定义轻量不可变配置对象
from dataclasses import dataclass


# 读取正整数环境变量，格式错误时抛出明确异常
def _positive_int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    # 未配置或空字符串都走默认值
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"environment variable {name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"environment variable {name} must be >= 1, got {value}")
    return value


# 读取可选字符串环境变量，空字符串视为未配置
def _optional_env(name: str) -> str | None:
    return os.getenv(name) or None


# 运行时配置：从环境变量一次性装配
@dataclass(frozen=True)
class Settings:
    # 搜索与验证扫描的最大进程数
    threads: int = 1
    # signatures.idx 路径；None 表示不做跨运行去重
    index_path: str | None = None
    # 报告归档 S3 Bucket；None 表示禁止 --publish
    report_bucket: str | None = None
    # 报告预签名 URL 过期秒数
    report_url_expires: int = 600
    # CLI 日志级别
    log_level: str = "WARNING"

    # 工厂方法：从环境变量构建 Settings
    @classmethod
    def from_env(cls) -> Settings:
        # 默认进程数跟随 CPU 核数
        default_threads = os.cpu_count() or 1
        return cls(
            threads=_positive_int_env("LATTICE_XRAY_THREADS", default_threads),
            index_path=_optional_env("LATTICE_XRAY_INDEX"),
            report_bucket=_optional_env("LATTICE_XRAY_REPORT_BUCKET"),
            report_url_expires=_positive_int_env("LATTICE_XRAY_REPORT_URL_EXPIRES", 600),
            log_level=(os.getenv("LATTICE_XRAY_LOG_LEVEL") or "WARNING").upper(),
        )
