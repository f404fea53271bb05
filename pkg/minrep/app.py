from __future__ import annotations

import argparse
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import replace
from pathlib import Path
from typing import Callable, TextIO

from minrep.analysis.curves import bounds_series
from minrep.analysis.oracle import enumerate_values
from minrep.analysis.ugly import histogram, ugly_numbers
from minrep.analysis.verify import CHECKS, VerifyContext, plan, verify
from minrep.core.config import Settings, load_settings_profile
from minrep.core.errors import MinrepError, OpsetMismatch, TableFormatError
from minrep.core.models import VerificationReport
from minrep.core.opset import PRESETS, resolve_opset
from minrep.engine.extremal import max_table
from minrep.engine.store import load_table, resume_table, save_table
from minrep.engine.table import ComplexityTable, EngineConfig, build_table
from minrep.exports import (
    write_bounds,
    write_census,
    write_extremal,
    write_histogram,
    write_reports,
    write_table_rows,
    write_ugly,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _pos_int(raw: str) -> int:
    try:
        v = int(raw.replace("_", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {raw!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="minrep",
        description="Minimal prefix-notation representations of natural numbers.",
    )
    parser.add_argument(
        "--profile",
        choices=("desk", "full"),
        default="desk",
        help="Select settings profile (default: desk; full = 4.5M-scale limits)",
    )
    parser.add_argument(
        "--settings",
        type=Path,
        default=None,
        help="Override settings config path (takes precedence over profile).",
    )
    parser.add_argument("--debug", action="store_true", help="Print [debug] diagnostics to stderr.")
    parser.add_argument("--no-progress", action="store_true", help="Disable the progress bar.")

    sub = parser.add_subparsers(dest="command", required=True)

    def opset_arg(p: argparse.ArgumentParser, default: str = "1S*") -> None:
        p.add_argument("--opset", choices=PRESETS, default=default, help=f"Operator set (default: {default})")

    def table_args(p: argparse.ArgumentParser) -> None:
        opset_arg(p)
        p.add_argument("--limit", type=_pos_int, default=None, help="N (default: settings default_limit)")
        p.add_argument("--table", type=Path, default=None, help="Read a saved table instead of building one.")

    def out_arg(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", type=Path, default=None, help="Output path (default: stdout)")

    p = sub.add_parser("compute", help="Build a complexity table and save it.")
    opset_arg(p)
    p.add_argument("--limit", type=_pos_int, default=None, help="N (default: settings default_limit)")
    p.add_argument("--out", type=Path, required=True, help="Binary table file to write.")
    p.add_argument("--resume", action="store_true", help="Extend the table already at --out.")
    p.add_argument("--text", type=Path, default=None, help="Also write the n,complexity,witness export.")

    p = sub.add_parser("witness", help="Print n, c(n) and a minimal term.")
    table_args(p)
    p.add_argument("n", type=_pos_int, nargs="+")

    p = sub.add_parser("ugly", help="Ugly numbers: smallest n of each complexity.")
    table_args(p)
    p.add_argument("--min-k", type=_pos_int, default=1, help="Smallest complexity to emit (default: 1)")
    out_arg(p)

    p = sub.add_parser("maxrep", help="Largest value of each length k.")
    opset_arg(p)
    p.add_argument("--kmax", type=_pos_int, default=54, help="Largest length (default: 54)")
    p.add_argument("--digit-cap", type=_pos_int, default=None, help="Digit cap (default: settings digit_cap)")
    out_arg(p)

    p = sub.add_parser("hist", help="Count of n <= N per complexity.")
    table_args(p)
    out_arg(p)

    p = sub.add_parser("verify", help="Run named checks; exit 1 on any counterexample.")
    p.add_argument(
        "--checks",
        default="all",
        help="Comma-separated check ids or 'all': " + ", ".join(CHECKS),
    )
    p.add_argument("--limit", type=_pos_int, default=None, help="Sweep limit N (default: settings default_limit)")
    p.add_argument("--table", type=Path, action="append", default=[], help="Saved table to use (repeatable).")
    p.add_argument(
        "--logstar",
        choices=("floor", "iterated"),
        default="floor",
        help="logstar3 convention for the ^ bound (default: floor)",
    )
    p.add_argument("--out-dir", type=Path, default=None, help="Write one <check>.csv per check here.")

    p = sub.add_parser("oracle", help="Exhaustive census of short terms.")
    opset_arg(p)
    p.add_argument("--depth", type=_pos_int, default=None, help="Largest term length (default: settings oracle_depth)")
    p.add_argument("--value-limit", type=_pos_int, default=None, help="Drop values above this.")
    out_arg(p)

    p = sub.add_parser("bounds", help="Per-n complexity against the bound curves (plot data).")
    table_args(p)
    p.add_argument("--stride", type=_pos_int, default=1, help="Sample every stride-th n (default: 1)")
    out_arg(p)

    p = sub.add_parser("export", help="Write a saved table as n,complexity,witness text.")
    p.add_argument("--table", type=Path, required=True)
    p.add_argument("--upto", type=_pos_int, default=None, help="Stop after this n.")
    out_arg(p)

    return parser.parse_args(argv)


@contextmanager
def _output(path: Path | None) -> Iterator[TextIO]:
    """stdout, or a file written to ``.tmp`` first and renamed into place."""
    if path is None:
        yield sys.stdout
        sys.stdout.flush()
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    try:
        with tmp.open("w", encoding="utf-8", newline="") as fh:
            yield fh
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise
    tmp.replace(path)


def _table(args: argparse.Namespace, settings: Settings, config: EngineConfig) -> ComplexityTable:
    ops = resolve_opset(args.opset)
    if args.table is not None:
        table = load_table(args.table)
        if table.ops.id != ops.id:
            raise OpsetMismatch(f"{args.table} holds a {table.ops.id} table, not {ops.id}")
        return table
    return build_table(ops, args.limit or settings.default_limit, config)


def cmd_compute(args: argparse.Namespace, settings: Settings, config: EngineConfig) -> int:
    ops = resolve_opset(args.opset)
    limit = args.limit or settings.default_limit
    if args.resume and args.out.exists():
        table = resume_table(args.out, ops, limit, config)
    else:
        if args.resume:
            print(f"[engine] {args.out} missing; building from scratch", file=sys.stderr)
        table = build_table(ops, limit, config)
    st = table.stats
    print(
        f"[engine] ops={ops.id} N={table.limit} {st.elapsed_sec:.1f}s "
        f"max sum operand {st.max_sum_operand} (at n={st.max_sum_operand_at})",
        file=sys.stderr,
    )
    save_table(table, args.out)
    if args.text is not None:
        with _output(args.text) as out:
            write_table_rows(table, out)
    return EXIT_OK


def cmd_witness(args: argparse.Namespace, settings: Settings, config: EngineConfig) -> int:
    table = _table(args, settings, config)
    for n in args.n:
        print(f"{n},{table.complexity_of(n)},{table.witness(n).text}")
    return EXIT_OK


def cmd_ugly(args: argparse.Namespace, settings: Settings, config: EngineConfig) -> int:
    table = _table(args, settings, config)
    with _output(args.out) as out:
        write_ugly(ugly_numbers(table, min_k=args.min_k), out)
    return EXIT_OK


def cmd_maxrep(args: argparse.Namespace, settings: Settings, config: EngineConfig) -> int:
    records = max_table(args.opset, args.kmax, args.digit_cap or settings.digit_cap)
    with _output(args.out) as out:
        write_extremal(records, out)
    return EXIT_OK


def cmd_hist(args: argparse.Namespace, settings: Settings, config: EngineConfig) -> int:
    table = _table(args, settings, config)
    with _output(args.out) as out:
        write_histogram(histogram(table), out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, settings: Settings, config: EngineConfig) -> int:
    ids = [c.strip() for c in str(args.checks).split(",") if c.strip()]
    try:
        steps = plan(ids)
    except KeyError as e:
        print(f"[verify] unknown check {e.args[0]!r}; known: {', '.join(CHECKS)}", file=sys.stderr)
        return EXIT_USAGE

    ctx = VerifyContext(
        settings=settings,
        limit=args.limit or settings.default_limit,
        config=config,
        logstar_convention=args.logstar,
    )
    for path in args.table:
        ctx.add_table(load_table(path))

    reports: list[VerificationReport] = [verify(cid, ctx, ops) for cid, ops in steps]

    if args.out_dir is not None:
        by_check: dict[str, list[VerificationReport]] = {}
        for r in reports:
            by_check.setdefault(r.check, []).append(r)
        for check, rows in by_check.items():
            with _output(args.out_dir / f"{check}.csv") as out:
                write_reports(rows, out)
    else:
        with _output(None) as out:
            write_reports(reports, out)

    failed = [r for r in reports if not r.passed]
    print(f"[verify] {len(reports) - len(failed)}/{len(reports)} passed", file=sys.stderr)
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def cmd_oracle(args: argparse.Namespace, settings: Settings, config: EngineConfig) -> int:
    result = enumerate_values(
        args.opset,
        args.depth or settings.oracle_depth,
        value_cap=settings.oracle_value_cap,
        value_limit=args.value_limit,
    )
    if result.dropped_values:
        print(f"[oracle] dropped {result.dropped_values} value(s) above the limit", file=sys.stderr)
    with _output(args.out) as out:
        write_census(result, out)
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace, settings: Settings, config: EngineConfig) -> int:
    table = _table(args, settings, config)
    with _output(args.out) as out:
        write_bounds(bounds_series(table, args.stride), out)
    return EXIT_OK


def cmd_export(args: argparse.Namespace, settings: Settings, config: EngineConfig) -> int:
    table = load_table(args.table)
    with _output(args.out) as out:
        write_table_rows(table, out, upto=args.upto)
    return EXIT_OK


Command = Callable[[argparse.Namespace, Settings, EngineConfig], int]

COMMANDS: dict[str, Command] = {
    "compute": cmd_compute,
    "witness": cmd_witness,
    "ugly": cmd_ugly,
    "maxrep": cmd_maxrep,
    "hist": cmd_hist,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "bounds": cmd_bounds,
    "export": cmd_export,
}


def main(argv: list[str] | None = None) -> int:
    args = _parse_args(argv)

    repo_root = Path(__file__).resolve().parents[1]
    try:
        settings = load_settings_profile(repo_root=repo_root, profile=args.profile, path_override=args.settings)
    except OSError as e:
        print(f"[config] error: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        print(f"[config] error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.debug:
        settings = replace(settings, debug=True)
    config = EngineConfig.from_settings(settings, progress=not args.no_progress)

    try:
        return COMMANDS[args.command](args, settings, config)
    except (TableFormatError, OpsetMismatch, OSError) as e:
        print(f"[minrep] error: {e}", file=sys.stderr)
        return EXIT_IO
    except MinrepError as e:
        print(f"[minrep] error: {e}", file=sys.stderr)
        return EXIT_USAGE
