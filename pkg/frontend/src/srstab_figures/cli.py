"""render-figures <figure-id> --in <csv...> --out <image>"""

from __future__ import annotations

import argparse
import sys

import matplotlib.pyplot as plt

from .csvdata import SchemaError
from .render import FIGURE_INPUTS, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render-figures",
        description="Render srstab CSV outputs as figures")
    parser.add_argument("figure", choices=sorted(FIGURE_INPUTS),
                        help="which figure to render")
    parser.add_argument("--in", dest="inputs", nargs="+", required=True,
                        metavar="CSV", help="input CSV file(s) with manifests")
    parser.add_argument("--out", required=True,
                        help="output image (.pdf/.svg vector, .png raster)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        fig = render(FigureSpec(figure=args.figure, inputs=args.inputs,
                                output=args.out))
        plt.close(fig)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
