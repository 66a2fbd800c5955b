from __future__ import annotations

# 获取 UTC 时间，用于按年月分目录
from datetime import UTC, datetime

# 类型标注
from typing import Any

# AWS SDK
import boto3


# 生成报告 S3 key：reports/YYYY/MM/<kind>[-r<radius>]-<run_id>.json
def build_report_s3_key(
    kind: str,
    run_id: str,
    radius: int | None = None,
    now: datetime | None = None,
) -> str:
    # 支持注入 now（便于测试）；不传就用当前 UTC 时间
    ts = now or datetime.now(UTC)
    stem = kind if radius is None else f"{kind}-r{radius}"
    return f"reports/{ts:%Y/%m}/{stem}-{run_id}.json"


# 上传报告字节到 S3
def upload_report(
    body: bytes,
    bucket_name: str,
    key: str,
    content_type: str = "application/json",
    client: Any | None = None,
) -> None:
    # 支持注入 mock client；不传则创建真实 S3 client
    s3 = client or boto3.client("s3")
    s3.put_object(Bucket=bucket_name, Key=key, Body=body, ContentType=content_type)


# 为报告生成限时下载链接
def generate_presigned_report_url(
    bucket_name: str,
    key: str,
    expires_in: int = 600,
    client: Any | None = None,
) -> str:
    s3 = client or boto3.client("s3")
    return s3.generate_presigned_url(
        "get_object",
        Params={"Bucket": bucket_name, "Key": key},
        ExpiresIn=expires_in,
    )
