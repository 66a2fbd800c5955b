from __future__ import annotations

from latticexray.pdf.render import MAX_DETAIL_ITEMS, render_report_pdf
from latticexray.search import EnumerationSpec, find_collisions


# 验证报告渲染至少能产出合法 PDF 字节
def test_render_collision_report(diamond) -> None:
    report = find_collisions(EnumerationSpec(1), True, extra_polygons=(diamond,)).to_dict()
    pdf_bytes = render_report_pdf("latticexray find-collisions", report)
    assert pdf_bytes.startswith(b"%PDF")
    assert len(pdf_bytes) > 100


# 明细超过上限时截断并换页，不应抛异常
def test_render_long_report_paginates() -> None:
    report = {
        "kind": "roundtrip",
        "radius": 3,
        "ok": False,
        "failures": [{"polygon": [[i, 0], [0, 1], [-i, 0], [0, -1]]} for i in range(400)],
        "counters": {"applies": 12},
    }
    short = render_report_pdf("short", {**report, "failures": report["failures"][:5]})
    long = render_report_pdf("long", report)
    assert long.startswith(b"%PDF")
    assert len(long) > len(short)
    assert len(report["failures"]) > MAX_DETAIL_ITEMS
