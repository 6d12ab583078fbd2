"""Command-line interface.

Four subcommands:

* ``fig1``     r-sweep dataset: coherence and concurrence across the Werner family
* ``sweep``    p-sweep dataset for one channel and a set of r values
* ``critical`` crossover / sudden-death / coherence-zero landmarks as JSON
* ``verify``   run the bundled invariant suite

Data commands emit CSV (default) or JSON.  CSV files start with
``# key=value`` metadata lines, then a header row, then data rows with at
most 12 significant digits per value and ``\\n`` line endings.  With
``--no-timestamp`` the output of identical invocations is byte-identical.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error.  The environment variable ``DECOLAB_THREADS`` (positive integer)
caps sweep parallelism; leaving it unset keeps the sequential default.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

from . import __version__
from .channels import CHANNEL_KINDS
from .selfcheck import run_selfcheck
from .sweep import (
    DEFAULT_GRID_COUNT,
    DEFAULT_R_VALUES,
    EPS_ZERO,
    GridSpec,
    SweepConfig,
    critical_points,
    max_workers_from_env,
    sweep_p,
    sweep_r,
)


def fmt_float(x: float) -> str:
    """Shortest representation that round-trips, capped at 12 significant digits."""
    x = float(x)
    if x == 0.0:
        return "0"
    for digits in range(1, 13):
        s = f"{x:.{digits}g}"
        if float(s) == x:
            return s
    return f"{x:.12g}"


def _metadata(channel: str, r_values, grid: GridSpec, timestamp: bool) -> dict:
    meta = {"tool_version": __version__, "channel": channel}
    if r_values is not None:
        meta["r_values"] = list(r_values)
    meta["grid"] = {"start": grid.start, "stop": grid.stop, "count": grid.count}
    meta["eps_zero"] = EPS_ZERO
    if timestamp:
        meta["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return meta


def _metadata_lines(meta: dict) -> list[str]:
    lines = [f"# tool_version={meta['tool_version']}", f"# channel={meta['channel']}"]
    if "r_values" in meta:
        lines.append("# r_values=" + ",".join(fmt_float(r) for r in meta["r_values"]))
    grid = meta["grid"]
    lines.append(
        f"# grid={fmt_float(grid['start'])}:{fmt_float(grid['stop'])}:{grid['count']}"
    )
    lines.append(f"# eps_zero={fmt_float(meta['eps_zero'])}")
    if "timestamp" in meta:
        lines.append(f"# timestamp={meta['timestamp']}")
    return lines


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _emit_records(args, meta: dict, header: list[str], rows: list[list]) -> None:
    if args.format == "json":
        records = [dict(zip(header, row)) for row in rows]
        text = json.dumps({"metadata": meta, "records": records}, indent=2) + "\n"
    else:
        lines = _metadata_lines(meta)
        lines.append(",".join(header))
        for row in rows:
            lines.append(",".join(v if isinstance(v, str) else fmt_float(v) for v in row))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)


def cmd_fig1(args) -> int:
    grid = GridSpec(count=args.count)
    records = sweep_r(grid, max_workers_from_env())
    meta = _metadata("none", None, grid, not args.no_timestamp)
    rows = [[rec.r, rec.reqc, rec.concurrence] for rec in records]
    _emit_records(args, meta, ["r", "reqc", "concurrence"], rows)
    return 0


def cmd_sweep(args) -> int:
    grid = GridSpec(count=args.count)
    r_values = tuple(args.r) if args.r else DEFAULT_R_VALUES
    config = SweepConfig(channel=args.channel, r_values=r_values, p_grid=grid)
    records = sweep_p(config, max_workers_from_env())
    meta = _metadata(args.channel, r_values, grid, not args.no_timestamp)
    rows = [
        [args.channel, rec.r, rec.p, rec.reqc, rec.concurrence] for rec in records
    ]
    _emit_records(args, meta, ["channel", "r", "p", "reqc", "concurrence"], rows)
    return 0


def cmd_critical(args) -> int:
    channel = None if args.channel == "none" else args.channel
    if channel is not None and args.r is None:
        raise ValueError("--r is required when --channel is not 'none'")
    grid = GridSpec(count=args.count)
    r = args.r if args.r is not None else 0.0
    points = critical_points(channel, r, grid, max_workers=max_workers_from_env())
    meta = _metadata(args.channel, None if channel is None else [r], grid,
                     not args.no_timestamp)
    payload = {
        "crossovers": list(points.crossovers),
        "death_intervals": [list(iv) for iv in points.death_intervals],
        "reqc_zeros": [list(iv) for iv in points.reqc_zeros],
        "reqc_plateaus": [list(iv) for iv in points.reqc_plateaus],
    }
    if args.format == "csv":
        lines = _metadata_lines(meta)
        lines.append("kind,start,end")
        for c in points.crossovers:
            lines.append(f"crossover,{fmt_float(c)},{fmt_float(c)}")
        for name, intervals in (
            ("death-interval", points.death_intervals),
            ("reqc-zero", points.reqc_zeros),
            ("reqc-plateau", points.reqc_plateaus),
        ):
            for a, b in intervals:
                lines.append(f"{name},{fmt_float(a)},{fmt_float(b)}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        text = json.dumps({"metadata": meta, "critical_points": payload}, indent=2)
        _emit(text + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    results = run_selfcheck(args.seed)
    width = max(len(res.name) for res in results)
    failed = False
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{res.name.ljust(width)}  {status}  {res.detail}")
        failed = failed or not res.passed
    print(f"{len(results)} property groups, seed {args.seed}: "
          + ("all passed" if not failed else "FAILURES detected"))
    return 1 if failed else 0


def _add_output_flags(sub, default_format: str = "csv") -> None:
    sub.add_argument("--out", default="-", help="output path, or - for stdout")
    sub.add_argument("--format", choices=("csv", "json"), default=default_format,
                     help=f"output format (default {default_format})")
    sub.add_argument("--no-timestamp", action="store_true",
                     help="omit the timestamp so identical runs are byte-identical")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="decolab",
        description="Coherence and concurrence dynamics of Werner states under local noise.",
    )
    parser.add_argument("--version", action="version", version=f"decolab {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    fig1 = subs.add_parser("fig1", help="r-sweep dataset across the Werner family")
    fig1.add_argument("--count", type=int, default=DEFAULT_GRID_COUNT,
                      help="number of r grid points (default 201)")
    _add_output_flags(fig1)
    fig1.set_defaults(func=cmd_fig1)

    sweep = subs.add_parser("sweep", help="p-sweep dataset for one noise channel")
    sweep.add_argument("--channel", required=True, choices=CHANNEL_KINDS)
    sweep.add_argument("--r", action="append", type=float,
                       help="Werner parameter; repeat for several curves "
                            f"(default {','.join(str(r) for r in DEFAULT_R_VALUES)})")
    sweep.add_argument("--count", type=int, default=DEFAULT_GRID_COUNT,
                       help="number of p grid points (default 201)")
    _add_output_flags(sweep)
    sweep.set_defaults(func=cmd_sweep)

    critical = subs.add_parser("critical",
                               help="crossover, sudden-death and coherence-zero landmarks")
    critical.add_argument("--channel", choices=CHANNEL_KINDS + ("none",), default="none",
                          help="noise channel, or 'none' for the crossover-in-r mode")
    critical.add_argument("--r", type=float, default=None,
                          help="Werner parameter (required unless --channel none)")
    critical.add_argument("--count", type=int, default=DEFAULT_GRID_COUNT,
                          help="grid points for the underlying sweep (default 201)")
    _add_output_flags(critical, default_format="json")
    critical.set_defaults(func=cmd_critical)

    verify = subs.add_parser("verify", help="run the bundled invariant suite")
    verify.add_argument("--seed", type=int, default=0,
                        help="seed for the randomised groups (default 0)")
    verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
