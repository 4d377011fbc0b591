"""Command-line entry point: ``exharm run | table | figure``."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import reference
from .sweep import (
    BASIS_MODES, FIGURES, TABLES, TASKS, VARIANT_CHOICES, ConfigError, SweepConfig, format_value, write_csv,
    compute_table, emit_figure_data, run,
)

PRECEDENCE = (
    "Settings are resolved in this order, later winning: built-in defaults, "
    "the JSON --config file, command-line flags. The output directory falls "
    "back to $EXHARM_OUTPUT_DIR when neither the file nor --output-dir sets it."
)

TABLE_REFERENCE = {
    "1": reference.MOMENTS,
    "2": reference.CORRELATION,
    "3": reference.RADII,
    "4": reference.ADIABATIC,
    "A2": None,
}


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="flat JSON file with SweepConfig keys")
    p.add_argument("--output-dir", help="directory for CSV files and the manifest")
    p.add_argument("--jobs", type=int, help="worker processes (default: CPU count)")
    p.add_argument("--basis-mode", choices=BASIS_MODES)
    p.add_argument("--basis-file", help="exponent file: electron block, blank line, PCP block")
    p.add_argument("--adiabatic-variant", choices=VARIANT_CHOICES)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exharm",
        description="Exact and mean-field solutions of the electron/PCP harmonium model.",
        epilog=PRECEDENCE,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="sweep a (m, omega) grid", epilog=PRECEDENCE)
    _common(p)
    p.add_argument("--masses", type=_float_list, help="e.g. 1,10,207,1836")
    p.add_argument("--omegas", type=_float_list, help="e.g. 0.01,1,100")
    p.add_argument("--tasks", nargs="+", choices=TASKS)

    p = sub.add_parser("table", help="recompute a published table on the reference grid", epilog=PRECEDENCE)
    p.add_argument("table", choices=TABLES)
    p.add_argument("--compare", action="store_true", help="append published values and differences")
    _common(p)

    p = sub.add_parser("figure", help="write curve data for one figure panel", epilog=PRECEDENCE)
    p.add_argument("figure", type=int, choices=FIGURES)
    p.add_argument("--m", type=float, required=True, help="PCP mass in electron masses")
    p.add_argument("--omega", type=float, required=True, help="trap frequency (hartree)")
    _common(p)
    return parser


def _config(args) -> SweepConfig:
    cfg = SweepConfig.from_json(args.config) if args.config else SweepConfig()
    return cfg.override(
        output_dir=args.output_dir,
        jobs=args.jobs,
        basis_mode=args.basis_mode,
        basis_file=args.basis_file,
        adiabatic_variant=args.adiabatic_variant,
        masses=getattr(args, "masses", None),
        omegas=getattr(args, "omegas", None),
        tasks=getattr(args, "tasks", None),
    )


def _table(args, cfg: SweepConfig) -> int:
    header, rows = compute_table(args.table, cfg)
    ref = TABLE_REFERENCE[args.table]
    if args.table == "A2":
        ref = {k: reference.ENERGIES_EXACT[k] + reference.ENERGIES_MCHF[k] for k in reference.GRID}
    if args.compare:
        names = header[2:]
        header = header + tuple(f"{n}_published" for n in names) + tuple(f"{n}_diff" for n in names)
        rows = [
            row + tuple(ref[row[:2]]) + tuple(a - b for a, b in zip(row[2:], ref[row[:2]]))
            for row in rows
        ]
    print(",".join(header))
    for row in rows:
        print(",".join(format_value(v) for v in row))
    out = cfg.output_dir or os.environ.get("EXHARM_OUTPUT_DIR")
    if out:
        write_csv(Path(out) / f"table{args.table}.csv", header, rows)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "run":
            return run(cfg)
        if args.command == "table":
            return _table(args, cfg)
        paths = emit_figure_data(cfg, args.figure, args.m, args.omega)
        for p in paths:
            print(p)
        return 0
    except (ConfigError, ValueError, RuntimeError) as exc:
        print(f"exharm: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
