"""Command-line entry point.

Exit status: 0 success, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import DegenerateState, ParseError, PolycatError, RangeError, ValidationError
from .export import csv_text, export_csv, render_heatmap
from .groups import gram_matrix
from .scenario import load_scenario, serialize_scenario
from .tomogram import tomogram_grid
from .verify import verify
from .wigner import wigner_grid

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


def _pair(z):
    return [float(np.real(z)), float(np.imag(z))]


def _write_text(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def _json(obj):
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _field_format(args, scenario, target):
    if args.format:
        return args.format
    if args.out and str(args.out).lower().endswith(".png"):
        return "image"
    for t, fmt in scenario.outputs:
        if t == target and fmt in ("csv", "image"):
            return fmt
    return "csv"


def _emit_field(field, args, scenario, target):
    fmt = _field_format(args, scenario, target)
    text = serialize_scenario(scenario)
    if fmt == "image":
        if args.out is None:
            raise ValidationError("image output needs --out")
        render_heatmap(field, args.out)
    elif args.out is None:
        sys.stdout.write(csv_text(field, text))
    else:
        export_csv(field, args.out, text)


def cmd_state(args, scenario):
    state = scenario.state()
    g = scenario.group
    payload = {
        "group": {"kind": g.kind, "n": g.n, "lambda": g.lam},
        "norm_constant": state.norm_constant,
        "terms": [{"coefficient": _pair(c), "A": _pair(q.A), "B": _pair(q.B), "C": _pair(q.C)}
                  for c, q in state.terms],
    }
    _write_text(_json(payload), args.out)
    return EXIT_OK


def cmd_wigner(args, scenario):
    _emit_field(wigner_grid(scenario.state(), scenario.phase_grid), args, scenario, "wigner")
    return EXIT_OK


def cmd_tomogram(args, scenario):
    _emit_field(tomogram_grid(scenario.state(), scenario.tomo_grid), args, scenario, "tomogram")
    return EXIT_OK


def cmd_gram(args, scenario):
    g = gram_matrix(scenario.seed_gaussian(), scenario.group.kind, scenario.group.n)
    m = g.matrix
    off = m.copy()
    np.fill_diagonal(off, 0.0)
    finite = off[np.isfinite(off)]

    def clean(a):
        return [[None if not np.isfinite(v) else float(v) for v in row] for row in a]

    payload = {
        "kind": scenario.group.kind,
        "n": scenario.group.n,
        "degenerate": list(g.degenerate),
        "real": clean(m.real),
        "imag": clean(m.imag),
        "max_offdiagonal": float(np.abs(finite).max()) if finite.size else 0.0,
    }
    _write_text(_json(payload), args.out)
    return EXIT_OK


def cmd_verify(args, scenario):
    report = verify(scenario, run_all=args.all)
    _write_text(_json(report), args.out)
    return EXIT_OK if report["passed"] else EXIT_FAILED


COMMANDS = {"state": cmd_state, "wigner": cmd_wigner, "tomogram": cmd_tomogram, "gram": cmd_gram,
            "verify": cmd_verify}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="polycat", description="Wigner functions and tomograms of cyclic and dihedral Gaussian superpositions.",
        epilog="exit status: 0 success, 1 verification failure, 2 input error",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "state": "print the normalized term list as JSON",
        "wigner": "evaluate the Wigner function on the phase-space grid",
        "tomogram": "evaluate the optical tomogram on the (X, theta) grid",
        "gram": "inner products of the lambda = 1..n family as JSON",
        "verify": "run the oracle suites; exit 1 on any failure",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--scenario", type=Path, required=name != "verify", help="scenario file")
        p.add_argument("--out", type=Path, help="output path (default: stdout)")
        p.add_argument("--threads", type=int, default=0, help="numba worker threads")
        if name in ("wigner", "tomogram"):
            p.add_argument("--format", choices=("csv", "image"), help="override the output format")
        if name == "verify":
            p.add_argument("--all", action="store_true", help="also run every preset figure scenario")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.scenario is None and not args.all:
        parser.error("verify needs --scenario or --all")
    _kernels.set_threads(args.threads)
    try:
        scenario = load_scenario(args.scenario) if args.scenario is not None else None
        return COMMANDS[args.command](args, scenario)
    except (ParseError, ValidationError, RangeError, DegenerateState) as exc:
        print(f"polycat: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        sys.stderr.close()
        return EXIT_OK
    except OSError as exc:
        print(f"polycat: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PolycatError as exc:
        print(f"polycat: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
