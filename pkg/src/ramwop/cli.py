"""Command-line interface.

Subcommands: `orders list`, `gen`, `color`, `run`, `verify`.  Exit codes:
0 when the run verified, 2 when a search came back exhausted, 1 on any
error.  The --seed flag is accepted and recorded but affects nothing.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .colorings import ColoringInstance, color_to_json, color_triple, color_tuple
from .errors import RamwopError
from .harness import (
    PipelineConfig,
    exit_code_for,
    gen_instance,
    run_pipeline,
    trace_to_json,
    verify_trace_text,
    _render_term,
)
from .orders import order_names


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pipeline", required=True, choices=("rt3", "rtn", "large", "hindman"))
    p.add_argument("--order", required=True)
    p.add_argument("--kind", required=True)
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--window", type=int, default=100)
    p.add_argument("--size", type=int, default=10)
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--budget", type=int, default=200000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, default=None)


def _config_from(args) -> PipelineConfig:
    return PipelineConfig(
        pipeline=args.pipeline,
        order=args.order,
        kind=args.kind,
        h=args.h,
        n=args.n,
        k=args.k,
        window=args.window,
        size=args.size,
        count=args.count,
        budget=args.budget,
        seed=args.seed,
    )


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="ramwop")
    sub = parser.add_subparsers(dest="command", required=True)

    orders_p = sub.add_parser("orders", help="inspect built-in orders")
    orders_p.add_argument("action", choices=("list",))

    gen_p = sub.add_parser("gen", help="print an instance prefix")
    _add_config_flags(gen_p)

    color_p = sub.add_parser("color", help="evaluate the colour of one tuple")
    _add_config_flags(color_p)
    color_p.add_argument("indices", type=int, nargs="+")

    run_p = sub.add_parser("run", help="run a pipeline end to end")
    _add_config_flags(run_p)

    verify_p = sub.add_parser("verify", help="re-check a trace file")
    verify_p.add_argument("trace", type=Path)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0

    try:
        return _dispatch(args)
    except RamwopError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    if args.command == "orders":
        for name in order_names():
            print(name)
        return 0

    if args.command == "gen":
        cfg = _config_from(args)
        cfg.validate()
        alpha = gen_instance(cfg.pipeline, cfg.order, cfg.kind, cfg.h)
        prefix = [_render_term(alpha.term(i)) for i in range(cfg.count)]
        _emit(json.dumps(prefix, indent=2) + "\n", args.out)
        return 0

    if args.command == "color":
        cfg = _config_from(args)
        cfg.validate()
        alpha = gen_instance(cfg.pipeline, cfg.order, cfg.kind, cfg.h)
        inst = ColoringInstance.from_sequence(alpha)
        idx = tuple(args.indices)
        if cfg.pipeline == "rtn":
            colour = color_tuple(inst, cfg.h, idx)
        else:
            if len(idx) != 3:
                print("error: triple colorings take exactly three indices", file=sys.stderr)
                return 1
            colour = color_triple(inst, *idx)
        _emit(json.dumps(color_to_json(colour)) + "\n", args.out)
        return 0

    if args.command == "run":
        cfg = _config_from(args)
        trace = run_pipeline(cfg)
        _emit(trace_to_json(trace), args.out)
        code = exit_code_for(trace)
        if args.out is not None:
            verdicts = trace["verdicts"]
            print(f"verified={str(verdicts['verified']).lower()} exit={code}")
        return code

    if args.command == "verify":
        text = args.trace.read_text(encoding="utf-8")
        code = verify_trace_text(text)
        print("trace ok" if code == 0 else f"trace check failed (exit {code})")
        return code

    return 1


if __name__ == "__main__":
    raise SystemExit(main())
