"""Command-line interface.

Subcommands: table, row, voxel-verify, crossover, series, mesh.
Exit codes: 0 success, 1 usage error, 2 voxel-verify mismatch, 3 I/O failure.
Identical argv produces byte-identical output.
"""
from __future__ import annotations

import argparse
import sys

from . import analysis, mesh, metrics, voxel


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad usage; 2 is reserved for
    # verification mismatches here, so route usage problems to exit 1.
    def error(self, message):
        raise _UsageError(message)


_MODELS = {
    "menger": metrics.ModelKind.MENGER_SPONGE,
    "slices": metrics.ModelKind.SLICES,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spongeheat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table",
                       help="print the reference table for n = 0..max-n")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")

    p = sub.add_parser("row", help="print a single table row")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")

    p = sub.add_parser("voxel-verify",
                       help="check closed-form volume/surface against the voxel oracle")
    p.add_argument("--model", choices=sorted(_MODELS), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--oracle-cap", type=int, default=voxel.DEFAULT_ORACLE_CAP)

    p = sub.add_parser("crossover",
                       help="locate where the sponge efficiency curve overtakes the slice curve")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("series",
                       help="write the efficiency-vs-surface series of both models as CSV")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--out", required=True)

    p = sub.add_parser("mesh",
                       help="export a voxelized geometry as a triangle mesh")
    p.add_argument("--model", choices=sorted(_MODELS), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("stl", "obj"), default="stl")
    p.add_argument("--out", required=True)
    p.add_argument("--oracle-cap", type=int, default=voxel.DEFAULT_ORACLE_CAP)

    return parser


def _check_cap(cap: int) -> int:
    if not 0 <= cap <= voxel.DEFAULT_ORACLE_CAP:
        raise _UsageError(
            f"--oracle-cap may only lower the default {voxel.DEFAULT_ORACLE_CAP}"
        )
    return cap


def _render_text_table(rows) -> str:
    cells = [dict(zip(analysis.TABLE_COLUMNS, analysis.TABLE_COLUMNS))]
    cells += [analysis.format_paper_precision(row) for row in rows]
    widths = {
        col: max(len(line[col]) for line in cells) for col in analysis.TABLE_COLUMNS
    }
    return "\n".join(
        "  ".join(line[col].rjust(widths[col]) for col in analysis.TABLE_COLUMNS)
        for line in cells
    )


def _emit_rows(rows, fmt: str) -> None:
    if fmt == "text":
        print(_render_text_table(rows))
    elif fmt == "csv":
        analysis.emit_csv(rows, sys.stdout.buffer)
        sys.stdout.buffer.flush()
    else:
        analysis.emit_json(sys.stdout.buffer, rows=rows)
        sys.stdout.buffer.flush()


def _cmd_table(args) -> int:
    _emit_rows(analysis.full_table(args.max_n), args.format)
    return 0


def _cmd_row(args) -> int:
    _emit_rows([analysis.table_row(args.n)], args.format)
    return 0


def _cmd_voxel_verify(args) -> int:
    kind = _MODELS[args.model]
    grid = voxel.build_grid(kind, args.n, cap=_check_cap(args.oracle_cap))
    closed_v = metrics.model_volume(kind, args.n)
    closed_s = metrics.model_surface(kind, args.n)
    oracle_v = voxel.measure_volume(grid)
    oracle_s = voxel.measure_surface(grid)
    strings = analysis.format_paper_precision(analysis.table_row(args.n))
    dec_v = strings["V_M" if kind is metrics.ModelKind.MENGER_SPONGE else "V_s"]
    dec_s = strings["S_M" if kind is metrics.ModelKind.MENGER_SPONGE else "S_s"]
    ok = closed_v == oracle_v and closed_s == oracle_s
    print(f"volume : closed {closed_v}  oracle {oracle_v}  "
          f"{'MATCH' if closed_v == oracle_v else 'MISMATCH'}")
    print(f"surface: closed {closed_s}  oracle {oracle_s}  "
          f"{'MATCH' if closed_s == oracle_s else 'MISMATCH'}")
    print(f"{'PASS' if ok else 'FAIL'} model={args.model} n={args.n} V={dec_v} S={dec_s}")
    return 0 if ok else 2


def _cmd_crossover(args) -> int:
    sponge = analysis.efficiency_series(metrics.ModelKind.MENGER_SPONGE, args.max_n)
    slabs = analysis.efficiency_series(metrics.ModelKind.SLICES, args.max_n)
    try:
        report = analysis.find_crossover(sponge, slabs)
    except analysis.NoCrossoverError as exc:
        if args.format == "json":
            analysis.emit_json(sys.stdout.buffer, crossover=None)
            sys.stdout.buffer.flush()
        else:
            print(f"no crossover: {exc}")
        return 0
    if args.format == "json":
        analysis.emit_json(sys.stdout.buffer, crossover=report)
        sys.stdout.buffer.flush()
    else:
        print(f"method:  {report.method}")
        print(f"s_star:  {report.s_star:.8g}")
        print(f"bracket: menger n in {list(report.menger_bracket)}, "
              f"slices n in {list(report.slices_bracket)}")
    return 0


def _cmd_series(args) -> int:
    series = [
        analysis.efficiency_series(metrics.ModelKind.MENGER_SPONGE, args.max_n),
        analysis.efficiency_series(metrics.ModelKind.SLICES, args.max_n),
    ]
    with open(args.out, "wb") as sink:
        nbytes = analysis.emit_csv(series, sink)
    print(f"wrote {args.out} ({nbytes} bytes)")
    return 0


def _cmd_mesh(args) -> int:
    kind = _MODELS[args.model]
    grid = voxel.build_grid(kind, args.n, cap=_check_cap(args.oracle_cap))
    buffer = mesh.mesh_from_grid(grid)
    writer = mesh.write_stl_binary if args.format == "stl" else mesh.write_obj
    with open(args.out, "wb") as sink:
        nbytes = writer(buffer, sink)
    print(f"wrote {args.out} ({nbytes} bytes, {buffer.triangle_count} triangles)")
    return 0


_COMMANDS = {
    "table": _cmd_table,
    "row": _cmd_row,
    "voxel-verify": _cmd_voxel_verify,
    "crossover": _cmd_crossover,
    "series": _cmd_series,
    "mesh": _cmd_mesh,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (metrics.IterationOutOfRangeError, voxel.OracleCapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
