"""Renderer command line: one figure per invocation.

    polarix-render --figure fig3a --in data/fig3a.csv --out fig3a.png
                   [--cmap viridis] [--dpi 150] [--deterministic]

Exits 0 on success, 1 on usage problems, 2 on a schema mismatch or an
empty grid.
"""

from __future__ import annotations

import argparse
import sys

from .render import FigureJob, render
from .schema import SCHEMAS, SchemaMismatchError

__all__ = ["run", "main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="polarix-render",
                     description="render a polarix data CSV into its figure")
    parser.add_argument("--figure", required=True,
                        help=f"one of {', '.join(sorted(SCHEMAS))}")
    parser.add_argument("--in", dest="input_csv", required=True,
                        help="input CSV (see docs/schemas.md in polarix)")
    parser.add_argument("--out", dest="output_path", required=True,
                        help="output image path (extension picks the format)")
    parser.add_argument("--cmap", default="viridis", help="heatmap colormap")
    parser.add_argument("--dpi", type=int, default=150)
    parser.add_argument("--deterministic", action="store_true",
                        help="pin image metadata for byte-stable reruns")
    return parser


def run(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        job = FigureJob(figure_id=args.figure, input_csv=args.input_csv,
                        output_path=args.output_path, colormap=args.cmap,
                        dpi=args.dpi, deterministic=args.deterministic)
        report = render(job)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SchemaMismatchError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    drawn = len(report.series) + len(report.heatmaps)
    print(f"{args.output_path}: {drawn} plot element(s) from {args.input_csv}")
    return 0


def main() -> None:
    sys.exit(run())
