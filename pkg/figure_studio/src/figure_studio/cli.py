"""Batch figure renderer for simulation artifacts."""

from __future__ import annotations

import argparse
import sys

from .render import render
from .spec import load_spec


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="figure-studio",
        description="Render population panels, spacetime heatmaps, and "
        "spatial cuts from simulation CSV output.",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    sub = subs.add_parser("render", help="render one figure from a plot spec")
    sub.add_argument("--spec", metavar="PATH", required=True, help="plot spec JSON file")
    args = parser.parse_args(argv)

    try:
        spec = load_spec(args.spec)
        out = render(spec)
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
