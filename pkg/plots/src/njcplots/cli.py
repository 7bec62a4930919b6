"""Figure rendering CLI.

  njc-plots render --preset fig2|fig3|fig4 --in DIR --out DIR

The input directory must hold the CSV results (and manifests) produced by
the simulator CLI for the matching scenario preset, e.g.:

  njcsim run fig2 --out data/
  njc-plots render --preset fig2 --in data/ --out figures/

Exit codes: 0 success, 1 bad arguments or missing/malformed input.
"""

from __future__ import annotations

import argparse
import sys

from .figures import BUILDERS, render_preset
from .reader import PlotInputError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="njc-plots", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    render = sub.add_parser("render", help="render one figure preset from CSV results")
    render.add_argument("--preset", required=True, choices=sorted(BUILDERS))
    render.add_argument("--in", dest="in_dir", required=True, help="directory with the CSV results")
    render.add_argument("--out", dest="out_dir", required=True, help="directory for the image")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        path = render_preset(args.preset, args.in_dir, args.out_dir)
    except PlotInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
