"""Command-line front end: tables, analysis, verification sweeps, service.

Exit codes: 0 success (for ``analyze``: next player wins), 1 usage or
input error, 2 losing position from ``analyze`` or violations from
``verify``.  ``FIBNIM_MAX_N`` overrides the default horizon; flags win
over the environment.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import multiheap
from .analysis import verify_growth, verify_small_values
from .engine import (
    DEFAULT_MAX_N,
    CeilingError,
    HorizonError,
    build_table,
    table_to_csv,
)
from .zeckendorf import zeckendorf

ENV_MAX_N = "FIBNIM_MAX_N"


def _env_max_n() -> int | None:
    raw = os.environ.get(ENV_MAX_N)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"error: {ENV_MAX_N}={raw!r} is not an integer")


def _resolve_max_n(flag_value: int | None, fallback: int = DEFAULT_MAX_N) -> int:
    if flag_value is not None:
        return flag_value
    env = _env_max_n()
    return env if env is not None else fallback


def _fail(message: str, code: int = 1) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _pretty_table(table) -> str:
    width = max(2, len(str(int(table.diagonal.max()))) + 1)
    head = "n\\r |" + "".join(f"{r:>{width}}" for r in range(table.max_n + 1))
    lines = [head, "-" * len(head)]
    for n in range(table.max_n + 1):
        cells = table.rows[n].dense().tolist()
        lines.append(f"{n:>4}|" + "".join(f"{g:>{width}}" for g in cells))
    return "\n".join(lines) + "\n"


def cmd_table(args: argparse.Namespace) -> int:
    max_n = _resolve_max_n(args.max_n, fallback=20)
    try:
        table = build_table(max_n)
    except (CeilingError, ValueError) as exc:
        return _fail(str(exc))
    if args.format == "csv":
        text = table_to_csv(table)
    elif args.format == "json":
        text = json.dumps(
            {"max_n": table.max_n, "rows": [table.rows[n].dense().tolist() for n in range(table.max_n + 1)]}
        ) + "\n"
    else:
        text = _pretty_table(table)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        heaps = multiheap.parse_heaps(args.heaps)
    except ValueError as exc:
        return _fail(str(exc))
    horizon = max((h.n for h in heaps), default=0)
    try:
        table = build_table(horizon)
    except CeilingError as exc:
        return _fail(str(exc))
    state = multiheap.MultiHeapState(tuple(heaps))
    wins = multiheap.winning_moves(state, table)
    nim_sum = multiheap.game_value(state, table)
    if args.format == "json":
        doc = {
            "heaps": [
                {
                    "tokens": h.n,
                    "cap": h.r,
                    "grundy": table.value(h.n, h.r),
                    "zeckendorf": list(zeckendorf(h.n).values),
                }
                for h in heaps
            ],
            "nim_sum": nim_sum,
            "winning_moves": [{"heap": m.heap_index, "take": m.take} for m in wins],
        }
        print(json.dumps(doc, indent=2))
    else:
        for i, h in enumerate(heaps):
            parts = "+".join(str(v) for v in zeckendorf(h.n).values) or "0"
            print(
                f"heap {i}: {h.n} tokens, cap {h.r}, grundy {table.value(h.n, h.r)}, "
                f"zeckendorf {parts}"
            )
        if nim_sum:
            print(f"nim-sum: {nim_sum}  (next player wins)")
            print("winning moves: " + "; ".join(f"heap {m.heap_index} take {m.take}" for m in wins))
        else:
            print("nim-sum: 0  (P-position: no winning move)")
    return 0 if nim_sum else 2


def cmd_verify(args: argparse.Namespace) -> int:
    max_n = _resolve_max_n(args.max_n)
    run_small = args.small_values or not (args.small_values or args.growth)
    run_growth = args.growth or not (args.small_values or args.growth)
    try:
        table = build_table(max_n)
    except (CeilingError, ValueError) as exc:
        return _fail(str(exc))
    out_dir = Path(args.out) if args.out else None
    reports = {}
    if run_small:
        reports["small_values"] = verify_small_values(table, max_n)
    if run_growth:
        reports["growth"] = verify_growth(table, max_n)
    if out_dir:
        from . import report as report_mod  # matplotlib stays lazy

        written: list[Path] = []
        if "small_values" in reports:
            written += report_mod.write_small_values_outputs(reports["small_values"], out_dir)
        if "growth" in reports:
            written += report_mod.write_growth_outputs(table, reports["growth"], out_dir)
        for p in written:
            print(f"wrote {p}", file=sys.stderr)
    print(json.dumps({name: rep.to_dict() for name, rep in reports.items()}, indent=2))
    return 0 if all(rep.ok for rep in reports.values()) else 2


def cmd_serve(args: argparse.Namespace) -> int:
    import socket

    import uvicorn

    from .service import DEFAULT_HORIZON, create_app

    horizon = _resolve_max_n(args.max_n, fallback=DEFAULT_HORIZON)
    app = create_app(horizon=horizon, snapshot_path=args.snapshot)
    try:
        sock = socket.create_server((args.host, args.port))
    except OSError as exc:
        return _fail(f"cannot bind {args.host}:{args.port}: {exc}")
    host, port = sock.getsockname()[:2]
    print(f"serving on http://{host}:{port}", flush=True)
    server = uvicorn.Server(uvicorn.Config(app, log_level="warning"))
    server.run(sockets=[sock])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fibnim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="print the value table up to a horizon")
    p_table.add_argument("--max-n", type=int, default=None)
    p_table.add_argument("--format", choices=("csv", "pretty", "json"), default="csv")
    p_table.add_argument("--out", default=None, help="write to a file instead of stdout")
    p_table.set_defaults(func=cmd_table)

    p_an = sub.add_parser("analyze", help="values, parts and winning moves for a heap list")
    p_an.add_argument("heaps", help="comma-separated tokens[:cap], e.g. 12,7:6")
    p_an.add_argument("--format", choices=("pretty", "json"), default="pretty")
    p_an.set_defaults(func=cmd_analyze)

    p_ver = sub.add_parser("verify", help="run verification sweeps against the engine")
    p_ver.add_argument("--max-n", type=int, default=None)
    p_ver.add_argument("--small-values", action="store_true", help="classifier agreement sweep")
    p_ver.add_argument("--growth", action="store_true", help="growth-law sweep")
    p_ver.add_argument("--out", default=None, help="directory for report files and figures")
    p_ver.set_defaults(func=cmd_verify)

    p_srv = sub.add_parser("serve", help="run the HTTP service")
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--port", type=int, default=8000)
    p_srv.add_argument("--max-n", type=int, default=None, help="table horizon for the service")
    p_srv.add_argument("--snapshot", default=None, help="JSON snapshot path for sessions")
    p_srv.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HorizonError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
