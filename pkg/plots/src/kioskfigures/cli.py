"""``render_figures`` entry point."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .figures import DEFAULT_PI_SLICES, KINDS, FigureError, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render_figures",
        description="Render figure analogs from kiosksim CSV outputs.",
    )
    parser.add_argument("kind", choices=list(KINDS))
    parser.add_argument(
        "--in",
        dest="inputs",
        action="append",
        required=True,
        help="input CSV (sweep.csv or breakeven.csv); for margin_loss_averaged, "
        "the directory written by `kiosksim report`",
    )
    parser.add_argument("--out", required=True, help="output image path (.png or .svg)")
    parser.add_argument(
        "--pi-slices",
        type=float,
        nargs="+",
        default=list(DEFAULT_PI_SLICES),
        help="intention slices for the panel figures",
    )
    parser.add_argument("--dpi", type=int, default=150)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec_kwargs = dict(
        kind=args.kind,
        inputs=tuple(Path(p) for p in args.inputs),
        out=Path(args.out),
        pi_slices=tuple(args.pi_slices),
        dpi=args.dpi,
    )
    try:
        out = render(FigureSpec(**spec_kwargs))
    except FigureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
