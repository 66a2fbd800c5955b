"""命令行入口模块。

本模块负责：
1) 解析子命令与参数（每次调用恰好一个子命令）。
2) 读取输入文件并调用对应的库函数，不做额外计算。
3) 按 --json 输出库函数结果的 JSON，否则输出简短文本。
4) 把异常映射为退出码：0 正常，1 输入/IO/用法错误，2 定理被违反。
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from time import perf_counter
from typing import Any, TextIO
from uuid import uuid4

from latticexray.errors import LatticeError, TheoremViolationError
from latticexray.formats import (
    dump_json,
    load_point_set,
    load_polygon,
    load_shape,
    load_widths,
    parse_direction,
    polygon_to_json,
)
from latticexray.lattice_core import (
    boundary_lattice_count,
    lattice_points,
    pick_area2,
    pick_identity_holds,
)
from latticexray.pdf.render import render_report_pdf
from latticexray.projection import integer_width, projection_count, signature
from latticexray.search import (
    EnumerationSpec,
    enumerate_symmetric_polygons,
    find_collisions,
    rediscover_negative_answer,
    verify_theorem12,
)
from latticexray.settings import Settings
from latticexray.storage.index import SignatureIndex
from latticexray.storage.s3 import (
    build_report_s3_key,
    generate_presigned_report_url,
    upload_report,
)
from latticexray.theorems import cup, reconstruct_from_widths, uniqueness_check
from latticexray.verification import SWEEPS

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2

# 处理函数统一返回 (退出码, JSON 负载, 文本输出)
Outcome = tuple[int, dict[str, Any], str]
Handler = Callable[[argparse.Namespace, Settings], Outcome]

# check-* 子命令到验证扫描的映射
CHECK_COMMANDS = {
    "check-thm32": "theorem32",
    "check-parallelograms": "parallelograms",
    "check-lemma35": "lemma35",
    "check-pick": "pick",
    "check-roundtrip": "roundtrip",
    "check-cup": "cup",
    "check-edge-widths": "edge_widths",
    "check-reduced-directions": "reduced_directions",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse 默认以退出码 2 结束进程，这里改为抛异常，统一走退出码 1
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the library result as JSON")
    common.add_argument("--workers", type=_positive_int, default=None,
                        help="worker processes (default: LATTICE_XRAY_THREADS)")
    common.add_argument("--index", default=None, help="signatures.idx path for search runs")
    common.add_argument("--pdf", default=None, help="also render the report to this PDF path")
    common.add_argument("--publish", action="store_true",
                        help="upload the JSON report to LATTICE_XRAY_REPORT_BUCKET")

    parser = _Parser(prog="latticexray",
                     description="Projection counts of convex lattice sets in Z^2.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("project", "width"):
        cmd = sub.add_parser(name, parents=[common])
        cmd.add_argument("--set", dest="sets", action="append", required=True)
        cmd.add_argument("--dir", required=True, help="direction a,b in any integer form")

    cmd = sub.add_parser("signature", parents=[common])
    cmd.add_argument("--set", dest="sets", action="append", required=True)
    cmd.add_argument("--dilate", type=_positive_int, default=1)

    for name in ("pick", "cup", "compare"):
        cmd = sub.add_parser(name, parents=[common])
        cmd.add_argument("--set", dest="sets", action="append", required=True)

    for name in CHECK_COMMANDS:
        cmd = sub.add_parser(name, parents=[common])
        cmd.add_argument("--radius", type=_positive_int, required=True)
        if name == "check-cup":
            cmd.add_argument("--pairs", type=_positive_int, default=1000)
            cmd.add_argument("--seed", type=int, default=0)
        if name in ("check-edge-widths", "check-reduced-directions"):
            cmd.add_argument("--sample", type=_positive_int, default=None)
            cmd.add_argument("--seed", type=int, default=0)

    cmd = sub.add_parser("verify-uniqueness", parents=[common])
    cmd.add_argument("--radius", type=_positive_int, required=True)

    cmd = sub.add_parser("find-collisions", parents=[common])
    cmd.add_argument("--radius", type=_positive_int, required=True)
    cmd.add_argument("--with-dilate", action="store_true")
    cmd.add_argument("--max-vertices", type=_positive_int, default=None)

    cmd = sub.add_parser("rediscover", parents=[common])
    cmd.add_argument("--max-radius", type=_positive_int, default=8)
    cmd.add_argument("--start-radius", type=_positive_int, default=1)

    cmd = sub.add_parser("reconstruct", parents=[common])
    cmd.add_argument("--widths", required=True)

    cmd = sub.add_parser("enumerate", parents=[common])
    cmd.add_argument("--radius", type=_positive_int, required=True)
    cmd.add_argument("--count-only", action="store_true")
    cmd.add_argument("--max-vertices", type=_positive_int, default=None)
    return parser


def _one_set(args: argparse.Namespace, count: int = 1) -> list[str]:
    if len(args.sets) != count:
        raise UsageError(f"{args.command} expects exactly {count} --set argument(s)")
    return args.sets


def _workers(args: argparse.Namespace, settings: Settings) -> int:
    return args.workers or settings.threads


def _index(args: argparse.Namespace, settings: Settings) -> SignatureIndex | None:
    path = args.index or settings.index_path
    return SignatureIndex(path) if path else None


def _cmd_project(args: argparse.Namespace, settings: Settings) -> Outcome:
    (path,) = _one_set(args)
    u = parse_direction(args.dir)
    count = projection_count(load_point_set(path), u)
    return EXIT_OK, {"direction": u.as_list(), "count": count}, str(count)


def _cmd_width(args: argparse.Namespace, settings: Settings) -> Outcome:
    (path,) = _one_set(args)
    u = parse_direction(args.dir)
    width = integer_width(load_shape(path), u)
    return EXIT_OK, {"direction": u.as_list(), "width": width}, str(width)


def _cmd_signature(args: argparse.Namespace, settings: Settings) -> Outcome:
    (path,) = _one_set(args)
    sig = signature(load_point_set(path), args.dilate)
    return EXIT_OK, {"key": sig.key(), **sig.to_dict()}, sig.key()


def _cmd_pick(args: argparse.Namespace, settings: Settings) -> Outcome:
    (path,) = _one_set(args)
    polygon = load_polygon(path)
    payload = {
        "area2": pick_area2(polygon),
        "lattice_points": len(lattice_points(polygon, 1)),
        "boundary_points": boundary_lattice_count(polygon),
        "pick_identity": pick_identity_holds(polygon),
    }
    text = " ".join(f"{k}={str(v).lower()}" for k, v in payload.items())
    return EXIT_OK, payload, text


def _cmd_cup(args: argparse.Namespace, settings: Settings) -> Outcome:
    first, second = _one_set(args, 2)
    joined = cup(load_polygon(first), load_polygon(second))
    payload = polygon_to_json(joined)
    return EXIT_OK, payload, dump_json(payload)


def _cmd_compare(args: argparse.Namespace, settings: Settings) -> Outcome:
    first, second = _one_set(args, 2)
    verdict = uniqueness_check(load_polygon(first), load_polygon(second))
    payload = verdict.to_dict()
    code = EXIT_VIOLATION if verdict.theorem_violation else EXIT_OK
    text = " ".join(f"{k}={json.dumps(v)}" for k, v in payload.items() if k != "kind")
    return code, payload, text


def _cmd_check(args: argparse.Namespace, settings: Settings) -> Outcome:
    kind = CHECK_COMMANDS[args.command]
    options: dict[str, Any] = {"workers": _workers(args, settings)}
    for name in ("pairs", "seed", "sample"):
        if hasattr(args, name):
            options[name] = getattr(args, name)
    report = SWEEPS[kind](args.radius, **options)
    payload = report.to_dict()
    text = (
        f"{kind} radius={report.radius}: {report.polygons_checked} polygons, "
        f"{report.checks_run} checks, {len(report.failures)} failures"
    )
    return (EXIT_OK if report.ok else EXIT_VIOLATION), payload, text


def _collision_text(payload: dict[str, Any]) -> str:
    lines = [f"{len(payload['collision_classes'])} collision classes"]
    for cls in payload["collision_classes"]:
        lines.append(cls["key"])
        lines.extend(f"  {json.dumps(polygon)}" for polygon in cls["polygons"])
    return "\n".join(lines)


def _cmd_verify(args: argparse.Namespace, settings: Settings) -> Outcome:
    report = verify_theorem12(
        EnumerationSpec(args.radius),
        workers=_workers(args, settings),
        index=_index(args, settings),
    )
    payload = report.to_dict()
    return EXIT_OK, payload, _collision_text(payload)


def _cmd_find(args: argparse.Namespace, settings: Settings) -> Outcome:
    report = find_collisions(
        EnumerationSpec(args.radius, max_vertices=args.max_vertices),
        args.with_dilate,
        workers=_workers(args, settings),
        index=_index(args, settings),
    )
    payload = report.to_dict()
    return EXIT_OK, payload, _collision_text(payload)


def _cmd_rediscover(args: argparse.Namespace, settings: Settings) -> Outcome:
    record = rediscover_negative_answer(
        args.max_radius,
        start_radius=args.start_radius,
        workers=_workers(args, settings),
        index=_index(args, settings),
    )
    payload = record.to_dict()
    if record.status == "FOUND":
        text = "\n".join(
            [f"FOUND radius={record.radius}", record.key or ""]
            + [f"  {json.dumps(p.as_lists())}" for p in record.witness]
        )
    else:
        text = f"OPEN-DISCREPANCY: no collision up to radius {record.max_radius}"
    return EXIT_OK, payload, text


def _cmd_reconstruct(args: argparse.Namespace, settings: Settings) -> Outcome:
    polygon = reconstruct_from_widths(load_widths(args.widths))
    payload = polygon_to_json(polygon)
    return EXIT_OK, payload, dump_json(payload)


def _cmd_enumerate(args: argparse.Namespace, settings: Settings) -> Outcome:
    spec = EnumerationSpec(args.radius, max_vertices=args.max_vertices)
    polygons = list(enumerate_symmetric_polygons(spec, workers=_workers(args, settings)))
    payload: dict[str, Any] = {"radius": args.radius, "count": len(polygons)}
    if args.count_only:
        return EXIT_OK, payload, str(len(polygons))
    payload["polygons"] = [p.as_lists() for p in polygons]
    return EXIT_OK, payload, "\n".join(json.dumps(p) for p in payload["polygons"])


HANDLERS: dict[str, Handler] = {
    "project": _cmd_project,
    "width": _cmd_width,
    "signature": _cmd_signature,
    "pick": _cmd_pick,
    "cup": _cmd_cup,
    "compare": _cmd_compare,
    "verify-uniqueness": _cmd_verify,
    "find-collisions": _cmd_find,
    "rediscover": _cmd_rediscover,
    "reconstruct": _cmd_reconstruct,
    "enumerate": _cmd_enumerate,
    **{name: _cmd_check for name in CHECK_COMMANDS},
}


def _publish(args: argparse.Namespace, settings: Settings, payload: dict[str, Any],
             err: TextIO) -> None:
    if not settings.report_bucket:
        raise UsageError("--publish needs LATTICE_XRAY_REPORT_BUCKET")
    kind = str(payload.get("kind", args.command))
    # 没有半径参数的命令（project、pick 等）不带 -r 段
    radius = getattr(args, "radius", None) or getattr(args, "max_radius", None)
    run_id = str(uuid4())
    key = build_report_s3_key(kind, run_id, radius)
    upload_report(dump_json(payload).encode("utf-8"), settings.report_bucket, key)
    url = generate_presigned_report_url(
        settings.report_bucket, key, expires_in=settings.report_url_expires
    )
    print(f"published s3://{settings.report_bucket}/{key}\n{url}", file=err)


def _emit(args: argparse.Namespace, settings: Settings, outcome: Outcome,
          out: TextIO, err: TextIO) -> int:
    code, payload, text = outcome
    print(dump_json(payload) if args.json else text, file=out)
    if args.pdf:
        title = f"latticexray {args.command}"
        with open(args.pdf, "wb") as handle:
            handle.write(render_report_pdf(title, payload))
    if args.publish:
        _publish(args, settings, payload, err)
    return code


def run(argv: Sequence[str], out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    start = perf_counter()
    command = None
    code = EXIT_ERROR
    try:
        args = build_parser().parse_args(list(argv))
        command = args.command
        settings = Settings.from_env()
        try:
            outcome = HANDLERS[command](args, settings)
        except TheoremViolationError as exc:
            print(f"theorem violation: {exc}", file=err)
            outcome = (EXIT_VIOLATION, exc.witness, _violation_text(exc.witness))
        code = _emit(args, settings, outcome, out, err)
        return code
    except SystemExit as exc:
        # --help 走 argparse 的正常退出
        code = exc.code if isinstance(exc.code, int) else EXIT_ERROR
        return code
    except (UsageError, LatticeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        code = EXIT_ERROR
        return code
    except Exception:
        LOGGER.exception("unexpected failure")
        print("error: internal error (see log)", file=err)
        code = EXIT_ERROR
        return code
    finally:
        LOGGER.info(
            json.dumps(
                {"command": command, "exit_code": code,
                 "latency_ms": int((perf_counter() - start) * 1000)},
                ensure_ascii=False,
            )
        )


def _violation_text(witness: dict[str, Any]) -> str:
    if "collision_classes" in witness:
        return _collision_text(witness)
    return dump_json(witness)


def main() -> None:
    settings_level = "WARNING"
    try:
        settings_level = Settings.from_env().log_level
    except ValueError as exc:
        # 配置错误仍交给 run() 按退出码 1 处理，这里只提示日志级别已回退
        print(f"warning: {exc}; logging at {settings_level}", file=sys.stderr)
    logging.basicConfig(
        level=getattr(logging, settings_level, logging.WARNING),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
    )
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
