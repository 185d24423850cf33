"""plotkit <figure-number> <csv-dir> <out-dir>: render one bundled figure."""

from __future__ import annotations

import argparse
import sys

from .figures import BUILTIN_FIGURES, render_figure


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plotkit",
        description="Render the computation CLI's CSV sweeps as PNG and SVG figures.",
    )
    parser.add_argument("figure", type=int, choices=sorted(BUILTIN_FIGURES))
    parser.add_argument("csv_dir", help="directory holding fig<N>.csv")
    parser.add_argument("out_dir", help="directory for the rendered images")
    args = parser.parse_args(argv)
    try:
        result = render_figure(BUILTIN_FIGURES[args.figure], args.csv_dir, args.out_dir)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(result.png_path)
    print(result.svg_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
