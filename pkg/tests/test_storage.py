from __future__ import annotations

# 固定时间输入（UTC）
from datetime import UTC, datetime

import pytest

from latticexray.errors import InputFormatError
from latticexray.search.collisions import signature_key
from latticexray.settings import Settings
from latticexray.storage.index import SignatureIndex
from latticexray.storage.s3 import (
    build_report_s3_key,
    generate_presigned_report_url,
    upload_report,
)


# 验证 S3 key 规则：reports/YYYY/MM/<kind>[-r<radius>]-<run_id>.json
def test_build_report_s3_key_rule() -> None:
    now = datetime(2026, 2, 9, 1, 2, 3, tzinfo=UTC)
    key = build_report_s3_key("collisions", "run-a", 3, now=now)
    assert key == "reports/2026/02/collisions-r3-run-a.json"
    # 没有半径的命令不带 -r 段
    assert build_report_s3_key("pick", "run-a", now=now) == "reports/2026/02/pick-run-a.json"
    # 同月同类同半径的两次运行不会覆盖
    assert build_report_s3_key("collisions", "run-b", 3, now=now) != key


def test_upload_and_presign_use_injected_client(mocker) -> None:
    client = mocker.Mock()
    client.generate_presigned_url.return_value = "https://example.test/signed"

    upload_report(b"{}", "bucket-1", "reports/2026/02/pick-r1.json", client=client)
    url = generate_presigned_report_url("bucket-1", "reports/x.json", expires_in=900, client=client)

    client.put_object.assert_called_once_with(
        Bucket="bucket-1",
        Key="reports/2026/02/pick-r1.json",
        Body=b"{}",
        ContentType="application/json",
    )
    client.generate_presigned_url.assert_called_once_with(
        "get_object", Params={"Bucket": "bucket-1", "Key": "reports/x.json"}, ExpiresIn=900
    )
    assert url == "https://example.test/signed"


def test_settings_from_env(monkeypatch) -> None:
    monkeypatch.setenv("LATTICE_XRAY_THREADS", "4")
    monkeypatch.setenv("LATTICE_XRAY_INDEX", "/tmp/signatures.idx")
    monkeypatch.setenv("LATTICE_XRAY_LOG_LEVEL", "info")
    settings = Settings.from_env()
    assert settings.threads == 4
    assert settings.index_path == "/tmp/signatures.idx"
    assert settings.report_bucket is None
    assert settings.report_url_expires == 600
    assert settings.log_level == "INFO"


@pytest.mark.parametrize("raw", ["zero", "0", "-2"])
def test_settings_reject_bad_thread_count(monkeypatch, raw) -> None:
    monkeypatch.setenv("LATTICE_XRAY_THREADS", raw)
    with pytest.raises(ValueError, match="LATTICE_XRAY_THREADS"):
        Settings.from_env()


def test_index_round_trip(tmp_path, diamond, hexagon) -> None:
    index = SignatureIndex(tmp_path / "nested" / "signatures.idx")
    assert index.lookup(True) == {}
    entries = [(p, signature_key(p, True)) for p in (diamond, hexagon)]
    assert index.append(True, entries) == 2
    assert index.append(False, [(diamond, signature_key(diamond, False))]) == 1

    assert index.lookup(True) == dict(entries)
    assert index.lookup(False) == {diamond: signature_key(diamond, False)}
    with pytest.raises(ValueError):
        index.append(False, entries)


def test_index_reports_bad_line(tmp_path) -> None:
    path = tmp_path / "signatures.idx"
    path.write_text("1;\t[[0,0]]\nno-tab-here\n", encoding="utf-8")
    with pytest.raises(InputFormatError) as info:
        SignatureIndex(path).lookup(False)
    assert info.value.line == 1

    path.write_text("5;\t[[-1,0],[0,-1],[1,0],[0,1]]\nno-tab-here\n", encoding="utf-8")
    with pytest.raises(InputFormatError) as info:
        SignatureIndex(path).lookup(False)
    assert info.value.line == 2
