"""Command line: ``eikhelix analyze | selftest | version``.

Exit codes: 0 success, 2 configuration error, 3 geometric precondition
failure, 4 selftest failure.
"""

import argparse
import json
import sys

from . import __version__
from .errors import ConfigError, EikHelixError, GeometryError
from .numerics import TolerancePolicy
from .reports import emit_plot_data, parse_config, run_analysis, selftest

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_GEOMETRY = 3
EXIT_SELFTEST = 4


def _error(kind, exc, code):
    doc = {"error": {"kind": kind, "type": type(exc).__name__, "message": str(exc), "exit_code": code}}
    print(json.dumps(doc, indent=2), file=sys.stderr)
    return code


def _analyze(args):
    try:
        with open(args.config) as fh:
            text = fh.read()
    except OSError as exc:
        return _error("config", exc, EXIT_CONFIG)
    try:
        cfg = parse_config(text)
        if args.convention:
            cfg.convention = args.convention
        report = run_analysis(cfg)
    except ConfigError as exc:
        return _error("config", exc, EXIT_CONFIG)
    except GeometryError as exc:
        return _error("geometry", exc, EXIT_GEOMETRY)
    except EikHelixError as exc:
        return _error("numerics", exc, EXIT_GEOMETRY)
    sys.stdout.write(report.to_json())
    if args.emit_plot_data:
        emit_plot_data(report, args.emit_plot_data)
    return EXIT_OK


def _selftest(args):
    try:
        policy = TolerancePolicy(args.abs_tol, args.rel_tol)
    except ValueError as exc:
        return _error("config", exc, EXIT_CONFIG)
    text, ok = selftest(policy)
    sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_SELFTEST


def build_parser():
    parser = argparse.ArgumentParser(prog="eikhelix", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify one curve and field from a config file")
    p.add_argument("--config", required=True, help="INI configuration file")
    p.add_argument("--emit-plot-data", metavar="DIR", help="write one CSV per sampled quantity")
    p.add_argument("--convention", choices=["metric", "coordinate"], help="override the gradient convention")
    p.set_defaults(run=_analyze)

    p = sub.add_parser("selftest", help="reproduce the built-in reference curves")
    p.add_argument("--abs-tol", type=float, default=1e-7)
    p.add_argument("--rel-tol", type=float, default=1e-6)
    p.set_defaults(run=_selftest)

    p = sub.add_parser("version", help="print the version")
    p.set_defaults(run=lambda args: print(f"eikhelix {__version__}") or EXIT_OK)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.run(args)


if __name__ == "__main__":
    sys.exit(main())
