"""Run every figure preset, write <name>.csv files and print a one-line summary per figure.

    python scripts/reproduce_figures.py --out results --grid 101 --threads 4
"""

import argparse
import time
from pathlib import Path

import numpy as np

from magnomech.cli import emit_csv
from magnomech.measures import PAIR_TAGS, PAIRS
from magnomech.sweep import FIGURES, figure_preset, sweep


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="results")
    parser.add_argument("--grid", type=int, default=None)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("figures", nargs="*", default=list(FIGURES))
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in args.figures:
        t0 = time.perf_counter()
        base, axes = figure_preset(name, args.grid)
        result = sweep(base, axes, threads=args.threads)
        path = emit_csv(result, out / f"{name}.csv")
        stable = [r for r in result.records if r.stable]
        maxima = " ".join(
            f"maxE_{PAIR_TAGS[p]}={np.nanmax(result.grid(p)):.3f}" for p in PAIRS
        )
        physical = sum(bool(r.physical) for r in stable)
        print(
            f"{name}: {len(stable)}/{len(result.records)} stable, {physical} physical, "
            f"{maxima}  -> {path} ({time.perf_counter() - t0:.1f} s)"
        )


if __name__ == "__main__":
    main()
