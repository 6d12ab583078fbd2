"""Command-line entry point: render one figure from one CSV."""

from __future__ import annotations

import argparse
import sys

from .render import DPI_DEFAULT, FigureSpec, RenderError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render a decolab CSV sweep as a static image.",
    )
    parser.add_argument("--input", required=True, help="CSV file produced by decolab")
    parser.add_argument("--kind", required=True, choices=("r-sweep", "p-sweep"))
    parser.add_argument("--out", required=True,
                        help="output image path (format from the extension, PNG default)")
    parser.add_argument("--title", default="", help="figure title override")
    parser.add_argument("--dpi", type=int, default=DPI_DEFAULT,
                        help=f"raster resolution (default {DPI_DEFAULT})")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(input_csv=args.input, kind=args.kind, output_image=args.out,
                      title=args.title, dpi=args.dpi)
    try:
        render(spec)
    except (RenderError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
