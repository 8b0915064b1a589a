#!/usr/bin/env python3
"""Write the four preset sweeps as CSV and print their region summaries."""

import argparse
from pathlib import Path

from qotto.sweep import PRESETS, preset, run_sweep, write_csv


def edges(flags):
    return [i for i in range(1, len(flags)) if flags[i] != flags[i - 1]]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", type=Path, default=Path("figures"))
    ap.add_argument("--points", type=int, default=181)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    for name in PRESETS:
        rows = run_sweep(preset(name, points=args.points))
        with open(args.outdir / f"{name}.csv", "w", newline="") as fh:
            write_csv(rows, fh)
        engine = [r.w > 0 for r in rows]
        maj = [r.maj == "P<P'" for r in rows]
        both = sum(e and m for e, m in zip(engine, maj))
        print(
            f"{name}: {sum(engine)} engine rows, {sum(maj)} majorized, {both} both; "
            f"engine edges at t2={[round(rows[i].t2, 3) for i in edges(engine)]}, "
            f"majorization edges at t2={[round(rows[i].t2, 3) for i in edges(maj)]}"
        )


if __name__ == "__main__":
    main()
