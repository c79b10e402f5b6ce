"""Command-line front end.

    winding-obstruction sweep configs/surface-g2.toml [--out-dir D] [--seed S] [--threads T]
    winding-obstruction pair --family z2_projective --n 16 --cycle std --trace unnorm
    winding-obstruction check all

Exit codes: 0 on success (a sweep exits 0 whatever its verdict), 1 if a
property check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from .almostrep import defect_report, generator_window, perturb
from .checks import run_suite
from .config import ExperimentConfig, parse_cycle
from .errors import ConfigError, InvalidInput, NotACycle, ObstructionError
from .linalg import TraceKind
from .obstruction import Family, PairingReport, SweepVerdict, point_seed, sweep, sweep_point


def write_csv(reports: list[PairingReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(PairingReport.CSV_COLUMNS)
    for r in reports:
        writer.writerow(r.csv_row())
    return buf.getvalue()


def summary_text(cfg: ExperimentConfig, verdict: SweepVerdict) -> str:
    lines = [
        f"family: {verdict.family}",
        f"trace: {cfg.trace.value}  eps: {cfg.eps_perturb}  seed: {cfg.seed}",
        f"verdict: {'OBSTRUCTION PRESENT' if verdict.obstruction_present else 'no obstruction'}",
        f"reason: {verdict.reason}",
        f"routes agree: {verdict.routes_agree}",
        "",
        f"{'n':>6} {'route':>5} {'pairing':>24} {'winding':>8} {'residual':>10} {'defect_op':>10} {'defect_p2':>10}",
    ]
    for r in verdict.reports:
        w = "-" if r.winding is None else str(r.winding)
        lines.append(
            f"{r.n:>6} {r.route:>5} {r.pairing.real:>+12.9f}{r.pairing.imag:>+11.2e}i {w:>8} "
            f"{r.lattice_residual:>10.2e} {r.defect_sup:>10.3e} {r.defect_p2:>10.3e}"
            + (f"  ! {r.error}" if r.error else "")
        )
    return "\n".join(lines) + "\n"


def cmd_sweep(args) -> int:
    try:
        cfg = ExperimentConfig.load(args.config)
        if args.seed is not None:
            cfg.seed = args.seed
        if args.out_dir is not None:
            cfg.out_dir = Path(args.out_dir)
        cfg.validate()
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    verdict = sweep(
        cfg.family,
        cfg.n_grid,
        cfg.cycle,
        cfg.ps,
        cfg.trace,
        cfg.eps_perturb,
        cfg.seed,
        cfg.n0,
        cfg.defect_threshold,
        threads=args.threads,
    )
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "sweep.csv").write_text(write_csv(verdict.reports), newline="")
    (out / "verdict.json").write_text(json.dumps(verdict.to_json(), indent=2) + "\n")
    text = summary_text(cfg, verdict)
    (out / "summary.txt").write_text(text)
    print(text, end="")
    return 0


def cmd_pair(args) -> int:
    try:
        family = Family(args.family, args.genus, args.charge)
        cycle = parse_cycle(args.cycle, family)
        trace_kind = TraceKind.parse(args.trace)
        if args.n < 2:
            raise InvalidInput("n must be >= 2")
        if not 0 <= args.eps < 0.1:
            raise InvalidInput("eps must lie in [0, 0.1)")
        reports = sweep_point(family, args.n, cycle, (2.0, math.inf), trace_kind, args.eps, args.seed)
    except (ConfigError, InvalidInput) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    errors = [r.error for r in reports if r.error]
    if any(e.startswith(NotACycle.__name__) for e in errors):
        print(f"error: {errors[0]}", file=sys.stderr)
        return 2
    rep = family.build(args.n, trace_kind)
    if args.eps:
        rep = perturb(rep, args.eps, point_seed(args.seed, args.n))
    table = defect_report(rep, generator_window(rep), (2.0, math.inf))
    doc = {
        "family": family.label(),
        "n": args.n,
        "trace": trace_kind.value,
        "routes": [r.to_json() for r in reports],
        "defects": [
            {"s": str(e.s), "t": str(e.t), "op": e.op_defect, "p2": e.schatten[2.0]}
            for e in table.entries
        ],
    }
    print(json.dumps(doc, indent=2))
    return 0


def cmd_check(args) -> int:
    try:
        results = run_suite(args.suite, args.seed)
    except KeyError:
        print(f"error: unknown suite {args.suite!r} (choose predet, chains, logs, all)", file=sys.stderr)
        return 2
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="winding-obstruction", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a sweep from a TOML config")
    p.add_argument("config")
    p.add_argument("--out-dir")
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("pair", help="one-shot pairing at a single n, both routes")
    p.add_argument("--family", required=True, choices=["z2_projective", "surface_pullback", "heisenberg"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cycle", default="default", help="default | hopf | std | chain JSON")
    p.add_argument("--trace", default="unnorm", choices=["norm", "unnorm"])
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--charge", type=int, default=1)
    p.add_argument("--eps", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("check", help="run a property suite")
    p.add_argument("suite")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ObstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
