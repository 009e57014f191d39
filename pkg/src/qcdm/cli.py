"""Command-line entry point.

    qcdm scenario NAME [--theta T --phi P ...] [--json]
    qcdm vernam --seed N --message HEX [--eve-stream {1,3}]
    qcdm validate FILE [--json]

Exit codes: 0 success, 2 physics/assertion failure, 64 usage error,
65 unreadable data.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import scenarios
from .errors import QcdmError
from .spin import MINUS_X, MINUS_Z, PLUS_X, PLUS_Z, Direction
from .state import check_axioms
from .linalg import as_matrix, check_shape, matrix_from_json
from .vernam import BitString, run_protocol

EXIT_OK = 0
EXIT_FAIL = 2
EXIT_USAGE = 64
EXIT_DATA = 65

FIDELITY_PASS = 1 - 1e-8

SCENARIOS = {
    "parapositronium": (1, lambda d: scenarios.parapositronium(*d), [PLUS_Z]),
    "teleportation": (1, lambda d: scenarios.teleportation(*d), [PLUS_Z]),
    "swapping": (0, lambda d: scenarios.entanglement_swapping(), []),
    "polarized-pairs": (4, lambda d: scenarios.polarized_pairs(*d), [PLUS_Z, MINUS_Z, PLUS_X, MINUS_X]),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qcdm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("scenario", help="run a conditional-state scenario")
    p.add_argument("name", help=", ".join(SCENARIOS))
    p.add_argument("--theta", type=float, action="append", default=[], help="polar angle (rad), repeatable")
    p.add_argument("--phi", type=float, action="append", default=[], help="azimuth (rad), repeatable")
    p.add_argument("--json", action="store_true")

    v = sub.add_parser("vernam", help="simulate the photon-pair one-time pad")
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--message", required=True, help="message as hex")
    v.add_argument("--eve-stream", type=int, choices=(1, 3), default=1)
    v.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")

    c = sub.add_parser("validate", help="check the density-matrix axioms for a JSON file")
    c.add_argument("path")
    c.add_argument("--json", action="store_true")
    return parser


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def format_matrix(m: np.ndarray) -> str:
    rows = []
    for row in m:
        cells = []
        for z in row:
            re = 0.0 if abs(z.real) < 1e-12 else z.real
            im = 0.0 if abs(z.imag) < 1e-12 else z.imag
            cells.append(_fmt(re) if im == 0.0 else f"{_fmt(re)}{im:+.6g}j")
        rows.append("  [" + ", ".join(cells) + "]")
    return "\n".join(rows)


def _directions(args, count: int, default: list[Direction]) -> list[Direction]:
    thetas, phis = args.theta, args.phi
    if not thetas and not phis:
        return default
    if len(phis) < len(thetas):
        phis = phis + [0.0] * (len(thetas) - len(phis))
    if len(thetas) != count or len(phis) != count:
        raise UsageError(f"scenario {args.name!r} takes {count} direction(s), got {len(thetas)} --theta / {len(args.phi)} --phi")
    return [Direction(t, p) for t, p in zip(thetas, phis)]


def run_scenario(args) -> int:
    if args.name not in SCENARIOS:
        raise UsageError(f"unknown scenario {args.name!r}; choose from {', '.join(SCENARIOS)}")
    count, fn, default = SCENARIOS[args.name]
    dirs = _directions(args, count, default)
    try:
        report = fn(dirs)
    except QcdmError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(f"scenario     {report.name}")
        print(f"probability  {_fmt(report.probability)}")
        print(f"fidelity     {_fmt(report.fidelity)}")
        print(f"pure         {report.pure}")
        print("result state")
        print(format_matrix(report.result_state.matrix))
        print("expected state")
        print(format_matrix(report.expected_state.matrix))
    return EXIT_OK if report.fidelity >= FIDELITY_PASS else EXIT_FAIL


def run_vernam(args) -> int:
    if args.seed < 0:
        raise UsageError("seed must be non-negative")
    try:
        message = BitString.from_hex(args.message)
    except (ValueError, QcdmError) as exc:
        raise UsageError(str(exc)) from exc
    transcript = run_protocol(args.seed, message, eve_stream=args.eve_stream)
    print(json.dumps(transcript.to_json(), indent=2))
    return EXIT_OK if transcript.ok else EXIT_FAIL


def run_validate(args) -> int:
    try:
        with open(args.path) as fh:
            obj = json.load(fh)
        m = matrix_from_json(obj)
        shape = check_shape(obj.get("shape", [m.shape[0]]), m.shape[0])
    except (OSError, ValueError, TypeError, AttributeError) as exc:
        print(f"qcdm: cannot read density matrix from {args.path}: {exc}", file=sys.stderr)
        return EXIT_DATA
    report = check_axioms(as_matrix(m))
    checks = {
        "hermitian": {"pass": report.hermitian, "residual": report.hermiticity_residual},
        "unit_trace": {"pass": report.unit_trace, "trace_re": report.trace.real,
                       "trace_im": report.trace.imag},
        "positive": {"pass": report.positive, "min_eigenvalue": report.min_eigenvalue},
    }
    if args.json:
        print(json.dumps({"path": args.path, "dim": int(m.shape[0]), "shape": list(shape),
                          "tolerance": report.tol, "axioms": checks, "ok": report.ok}, indent=2))
    else:
        print(f"{args.path}: dim {m.shape[0]}, shape {list(shape)}")
        print(f"  hermitian   {'PASS' if report.hermitian else 'FAIL'}  ||rho - rho^H||_F = {report.hermiticity_residual:.3e}")
        print(f"  unit trace  {'PASS' if report.unit_trace else 'FAIL'}  Tr rho = {report.trace.real:.6g}{report.trace.imag:+.3g}j")
        print(f"  positive    {'PASS' if report.positive else 'FAIL'}  min eigenvalue = {report.min_eigenvalue:.6g}")
    return EXIT_OK if report.ok else EXIT_FAIL


COMMANDS = {"scenario": run_scenario, "vernam": run_vernam, "validate": run_validate}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qcdm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
