"""Command line: render --preset <name> --in <dir> --out <file>."""

from __future__ import annotations

import argparse
import sys

from .render import PRESETS, SchemaError, render


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="modeloc-render",
        description="render modeloc CSV outputs into preset figures",
    )
    parser.add_argument("--preset", required=True, choices=list(PRESETS))
    parser.add_argument("--in", dest="in_dir", required=True,
                        help="directory holding the preset's CSV files")
    parser.add_argument("--out", required=True, help="output PNG path")
    args = parser.parse_args(argv)
    try:
        render(args.preset, args.in_dir, args.out)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
