from __future__ import annotations

# 报告明细按 JSON 文本逐条绘制
import json

# 内存字节缓冲，用于构建 PDF 二进制内容
from io import BytesIO

# 类型标注
from typing import Any

# A4 纸张尺寸常量
from reportlab.lib.pagesizes import A4

# PDF 画布
from reportlab.pdfgen import canvas

# 版式参数
MARGIN = 50
LINE_HEIGHT = 14

# 明细条目上限，避免大报告生成超长 PDF
MAX_DETAIL_ITEMS = 200


# 换页：y 低于下边距时新开一页并重置字体
def _ensure_room(c: canvas.Canvas, y: int, height: float) -> int:
    if y >= MARGIN:
        return y
    c.showPage()
    c.setFont("Helvetica", 10)
    return int(height - MARGIN)


# 在固定宽度内按词换行绘制文本，返回绘制后 y 坐标
def _draw_wrapped_text(
    c: canvas.Canvas,
    text: str,
    x: int,
    y: int,
    max_width: int,
    height: float,
) -> int:
    words = text.split()
    current: list[str] = []
    cursor_y = y

    for word in words:
        candidate = " ".join([*current, word])
        if c.stringWidth(candidate, "Helvetica", 10) <= max_width or not current:
            current.append(word)
            continue
        cursor_y = _ensure_room(c, cursor_y, height)
        c.drawString(x, cursor_y, " ".join(current))
        cursor_y -= LINE_HEIGHT
        current = [word]

    if current:
        cursor_y = _ensure_room(c, cursor_y, height)
        c.drawString(x, cursor_y, " ".join(current))
        cursor_y -= LINE_HEIGHT
    return cursor_y


# 报告中的列表字段作为明细，其余标量字段作为摘要
def _split_report(report: dict[str, Any]) -> tuple[dict[str, Any], dict[str, list[Any]]]:
    summary = {k: v for k, v in report.items() if not isinstance(v, list | dict)}
    details = {
        k: v if isinstance(v, list) else [v]
        for k, v in report.items()
        if isinstance(v, list | dict)
    }
    return summary, details


# 渲染检查 / 碰撞报告 PDF，返回 PDF 字节流
def render_report_pdf(title: str, report: dict[str, Any]) -> bytes:
    buffer = BytesIO()
    c = canvas.Canvas(buffer, pagesize=A4)
    width, height = A4
    max_width = int(width - (MARGIN * 2))
    y = int(height - MARGIN)

    # 标题
    c.setFont("Helvetica-Bold", 14)
    c.drawString(MARGIN, y, title)
    y -= 24

    # 摘要
    summary, details = _split_report(report)
    c.setFont("Helvetica", 10)
    for name, value in summary.items():
        y = _ensure_room(c, y, height)
        c.drawString(MARGIN, y, f"{name}: {value}")
        y -= 16
    y -= 8

    # 明细小节：每条记录一段 JSON 文本
    for name, items in details.items():
        y = _ensure_room(c, y, height)
        c.setFont("Helvetica-Bold", 12)
        c.drawString(MARGIN, y, f"{name} ({len(items)})")
        y -= 16
        c.setFont("Helvetica", 10)
        for item in items[:MAX_DETAIL_ITEMS]:
            y = _draw_wrapped_text(c, json.dumps(item, ensure_ascii=False), MARGIN, y,
                                   max_width, height)
        if len(items) > MAX_DETAIL_ITEMS:
            y = _draw_wrapped_text(c, f"... {len(items) - MAX_DETAIL_ITEMS} more omitted",
                                   MARGIN, y, max_width, height)
        y -= 12

    c.showPage()
    c.save()
    return buffer.getvalue()
