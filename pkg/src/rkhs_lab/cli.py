"""Command-line entry point ``rkhs-lab``.

Usage::

    rkhs-lab <experiment> --config FILE [--seed U64] [--out FILE]
    rkhs-lab validate --config FILE
    rkhs-lab suite [--seed U64] [--out FILE] [--criteria 1,3,7]

Exit codes: 0 all PASS, 2 any FAIL, 3 any ERROR, 1 usage or config error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .config import EXPERIMENTS, parse_config
from .errors import ConfigError
from .report import emit_report, exit_code
from .runner import run_experiment, run_suite

USAGE = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("{}: error: {}\n".format(self.prog, message))
        raise SystemExit(USAGE)


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _criteria(text: str) -> set:
    try:
        return {int(x) for x in text.split(",") if x.strip()}
    except ValueError:
        raise argparse.ArgumentTypeError("criteria must be a comma-separated list of integers")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rkhs-lab", description="Numerical experiments on generalized de Branges-Rovnyak kernels.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    for name in EXPERIMENTS:
        e = sub.add_parser(name, help="run a {} experiment".format(name))
        e.add_argument("--config", required=True, metavar="FILE")
        e.add_argument("--seed", type=_u64, default=None, help="overrides grid.seed")
        e.add_argument("--out", metavar="FILE", default=None, help="report path (default: config output or stdout)")
    v = sub.add_parser("validate", help="parse a config and list diagnostics")
    v.add_argument("--config", required=True, metavar="FILE")
    s = sub.add_parser("suite", help="run the acceptance battery")
    s.add_argument("--seed", type=_u64, default=0)
    s.add_argument("--out", metavar="FILE", default=None)
    s.add_argument("--criteria", type=_criteria, default=None, help="comma-separated criterion ids")
    s.add_argument("--quiet", action="store_true", help="no per-criterion progress on stderr")
    return p


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        sys.stderr.write("cannot read {}: {}\n".format(path, exc.strerror or exc))
        return None
    try:
        return parse_config(text)
    except ConfigError as exc:
        sys.stderr.write("invalid config {}:\n".format(path))
        for key, reason in exc.diagnostics:
            sys.stderr.write("  {}: {}\n".format(key or "<root>", reason))
        return None


def _emit(data, path, timing) -> int:
    try:
        emit_report(data, path, timing)
    except OSError as exc:
        sys.stderr.write("{}\n".format(exc))
        return USAGE
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        cfg = _load(args.config)
        if cfg is None:
            return USAGE
        sys.stdout.write("ok: {} (schema_version {})\n".format(cfg.experiment, cfg.schema_version))
        return 0
    if args.command == "suite":
        progress = None if args.quiet else (lambda cid, title, st: sys.stderr.write("[{}] {:>2} {}\n".format(
            st, cid, title)))
        suite, timing = run_suite(args.seed, args.criteria, progress)
        if _emit(suite, args.out, timing if args.out else None):
            return USAGE
        return exit_code(suite["status"])
    cfg = _load(args.config)
    if cfg is None:
        return USAGE
    if cfg.experiment != args.command:
        sys.stderr.write("config describes experiment {!r}, not {!r}\n".format(cfg.experiment, args.command))
        return USAGE
    rep = run_experiment(cfg, args.seed)
    out = args.out or cfg.output
    if out is not None and not os.path.isabs(out) and args.out is None:
        out = os.path.join(os.path.dirname(os.path.abspath(args.config)), out)
    timing = {"wall_time_seconds": rep.wall_time_seconds}
    if _emit(rep, out, timing if out else None):
        return USAGE
    return exit_code(rep.status)


if __name__ == "__main__":
    sys.exit(main())
