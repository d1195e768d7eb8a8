"""Figure rendering CLI: plot --figure <id> --in <csv...> --out <path>."""

from __future__ import annotations

import argparse
import sys

from .figures import FIGURES, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rateplots",
        description="Render figures from maqkd result tables",
    )
    parser.add_argument(
        "--figure", required=True, choices=sorted(FIGURES),
        help="figure layout to render",
    )
    parser.add_argument(
        "--in", dest="inputs", required=True, nargs="+", metavar="CSV",
        help="one or more result tables",
    )
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument(
        "--series", help="override the grouping column for the series"
    )
    parser.add_argument("--title", help="optional figure title")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        figure_id=args.figure,
        inputs=tuple(args.inputs),
        output=args.out,
        series=args.series,
        title=args.title,
    )
    try:
        path = render(spec)
    except FileNotFoundError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
