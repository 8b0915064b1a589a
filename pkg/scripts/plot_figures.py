#!/usr/bin/env python3
"""Plot CSVs written by reproduce_figures.py (needs matplotlib)."""

import argparse
import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def load(path):
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    col = lambda k: [float(r[k]) if r[k] else float("nan") for r in rows]  # noqa: E731
    return {k: col(k) for k in ("t2", "w", "dp1", "dp3", "eta", "xi1", "xi2")}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--indir", type=Path, default=Path("figures"))
    args = ap.parse_args()
    for name in ("fig3", "fig4", "fig6"):
        d = load(args.indir / f"{name}.csv")
        fig, ax = plt.subplots(figsize=(5, 3.5))
        ax.plot(d["t2"], d["w"], label="W")
        ax.plot(d["t2"], d["dp1"], "--", label="P1' - P1")
        ax.plot(d["t2"], d["dp3"], ":", label="P3 - P3'")
        ax.axhline(0, color="grey", lw=0.5)
        ax.set_xlabel("T2")
        ax.legend()
        fig.tight_layout()
        fig.savefig(args.indir / f"{name}.png", dpi=150)
        plt.close(fig)

    d = load(args.indir / "fig5.csv")
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(d["t2"], d["eta"], label="eta")
    ax.plot(d["t2"], d["xi1"], "--", label="xi1")
    ax.plot(d["t2"], d["xi2"], ":", label="xi2")
    ax.set_xlabel("T2")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.indir / "fig5.png", dpi=150)


if __name__ == "__main__":
    main()
