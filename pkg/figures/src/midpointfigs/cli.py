"""Command-line renderer: flags mirror the FigureSpec fields."""

from __future__ import annotations

import argparse
import sys

from .inputs import InputError
from .render import KINDS, FigureSpec, render


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="midpointfigs",
        description="Render midpointlab exports into SVG/PNG figures.",
    )
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--out", required=True, help="output image path (.svg or .png)")
    p.add_argument("--dot", help="DOT graph input (graph-layout)")
    p.add_argument("--delta-csv", dest="delta_csv",
                   help="simplex coordinate CSV for exact positions (graph-layout)")
    p.add_argument("--ratio-csv", dest="ratio_csv", help="density CSV (ratio-trend)")
    p.add_argument("--certificate", help="separation certificate JSON (separation-histogram)")
    p.add_argument("--seed", type=int, default=0, help="layout seed (default 0)")
    p.add_argument("--title", help="figure title override")
    p.add_argument("--labels", choices=["auto", "on", "off"], default="auto")
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    with_labels = {"auto": None, "on": True, "off": False}[args.labels]
    try:
        spec = FigureSpec(
            kind=args.kind,
            out_path=args.out,
            dot_path=args.dot,
            delta_csv=args.delta_csv,
            ratio_csv=args.ratio_csv,
            certificate=args.certificate,
            seed=args.seed,
            title=args.title,
            with_labels=with_labels,
        )
        report = render(spec)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    summary = {k: v for k, v in report.items() if k not in ("positions", "labels")}
    print(" ".join(f"{k}={v}" for k, v in summary.items()))
    return 0


if __name__ == "__main__":
    sys.exit(main())
