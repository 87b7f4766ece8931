"""`plot <kind> --in <csv...> --out <img>` — render simulator CSVs to images."""

from __future__ import annotations

import argparse
import sys

from .figures import FigureSpec, render
from .schemas import KINDS


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render link-budget simulator CSV files as figures.",
    )
    parser.add_argument("kind", choices=KINDS, help="figure kind")
    parser.add_argument(
        "--in", dest="inputs", nargs="+", required=True, metavar="CSV",
        help="input CSV file(s); heatmaps tile one panel per file, "
        "curve kinds overlay one series per file",
    )
    parser.add_argument("--out", required=True, metavar="IMG", help="output image path")
    parser.add_argument(
        "--labels", nargs="+", metavar="TEXT",
        help="per-input labels (default: file stems)",
    )
    parser.add_argument("--xlabel", help="x-axis label override")
    parser.add_argument("--ylabel", help="y-axis label override")
    parser.add_argument("--title", help="figure title")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    spec_kwargs = dict(
        kind=args.kind,
        inputs=tuple(args.inputs),
        output=args.out,
        labels=tuple(args.labels) if args.labels else None,
        xlabel=args.xlabel,
        ylabel=args.ylabel,
        title=args.title,
    )
    try:
        out = render(FigureSpec(**spec_kwargs))
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
