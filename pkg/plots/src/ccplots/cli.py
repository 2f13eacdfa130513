"""Command line entry point: draw one figure from one CSV file."""

import argparse
import json
import sys

from .render import FIGURE_KINDS, FigureSpec, SchemaError, render

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SCHEMA = 3
EXIT_IO = 5


def build_parser():
    parser = argparse.ArgumentParser(
        prog="plots",
        description="Render a static figure from scheduler CSV output.")
    parser.add_argument("kind", choices=FIGURE_KINDS,
                        help="which figure to draw")
    parser.add_argument("--in", dest="csv_path", required=True, metavar="CSV",
                        help="input CSV file (sweep or sigma-experiment schema)")
    parser.add_argument("--out", dest="out_path", required=True, metavar="IMG",
                        help="output image file (.png or .svg)")
    parser.add_argument("--title", default="", help="figure title override")
    return parser


def run_command(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    spec = FigureSpec(kind=args.kind, csv_path=args.csv_path,
                      out_path=args.out_path, title=args.title)
    try:
        summary = render(spec)
    except SchemaError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SCHEMA
    except (KeyError, TypeError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_IO
    n_points = sum(len(points) for points in summary.series.values())
    sys.stdout.write(json.dumps(
        {"kind": summary.kind, "out": summary.out_path,
         "series": len(summary.series), "points": n_points},
        sort_keys=True) + "\n")
    return EXIT_OK


def main():
    sys.exit(run_command())
