"""Command-line front end: ``xycomplexity {scan,line,scaling,kernel,selfcheck}``.

Exit codes: 0 success, 1 computation failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import ConfigError, build_config
from .scan import (
    KERNEL_COLUMNS,
    LINE_COLUMNS,
    SCAN_COLUMNS,
    kernel_rows,
    run_grid_scan,
    run_line_sweep,
    run_scaling_suite,
    to_csv,
    to_json,
)
from .selfcheck import run_selfcheck

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

COMMANDS = ("scan", "line", "scaling", "kernel", "selfcheck")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xycomplexity", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "scan": "complexity or |lambda| over the (h_T, gamma_T) plane",
        "line": "complexity along h_T at fixed gamma_T for several beta",
        "scaling": "fit near-critical complexity against the leading laws",
        "kernel": "dump I_n from the closed forms and/or quadrature",
        "selfcheck": "run the bundled oracle checks",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--config", type=Path, help="flat key = value config file")
        p.add_argument("--out", help="output path ('-' for stdout)")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--threads", type=int)
        p.add_argument("--tol", type=float)
        p.add_argument("--quick", action="store_true", help="reduced sample counts (selfcheck)")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override a config key; may be repeated")
        p.add_argument("--dump-config", action="store_true",
                       help="print the effective configuration and exit")
        p.add_argument("--seed", type=int, default=20240101, help=argparse.SUPPRESS)
        p.add_argument("--inject", default=None, help=argparse.SUPPRESS)
    return parser


def _overrides(args) -> list[str]:
    out = list(args.set)
    if args.out is not None:
        out.append(f"output.path={args.out}")
    if args.format is not None:
        out.append(f"output.format={args.format}")
    if args.threads is not None:
        out.append(f"threads={args.threads}")
    if args.tol is not None:
        out.append(f"tol={args.tol!r}")
    return out


def _write(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _render(columns, rows, fmt):
    return to_json(columns, rows) if fmt == "json" else to_csv(columns, rows)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.config.read_text() if args.config else None
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = build_config(args.command, text, _overrides(args),
                           source=str(args.config) if args.config else None)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.dump_config:
        sys.stdout.write(cfg.dump())
        return EXIT_OK

    fmt, path = cfg["output.format"], cfg["output.path"]
    status = EXIT_OK
    try:
        if args.command == "scan":
            out = _render(SCAN_COLUMNS, run_grid_scan(cfg), fmt)
        elif args.command == "line":
            out = _render(LINE_COLUMNS, run_line_sweep(cfg), fmt)
        elif args.command == "kernel":
            out = _render(KERNEL_COLUMNS, kernel_rows(cfg), fmt)
        else:
            if args.command == "scaling":
                report = run_scaling_suite(cfg)
            else:
                report = run_selfcheck(quick=args.quick, seed=args.seed, mutation=args.inject)
            out = json.dumps(report, indent=1) + "\n"
            status = EXIT_OK if report["passed"] else EXIT_FAIL
        _write(out, path)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ArithmeticError, ValueError) as exc:
        print(f"computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return status


if __name__ == "__main__":
    sys.exit(main())
