#!/usr/bin/env python3
"""Run the theorem scoreboard over several seeds and medium sizes."""

import argparse

from qotto import SamplerConfig, verify_theorems


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--trials", type=int, default=20_000)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    configs = {"mixed": SamplerConfig()}
    configs.update({f"n={n}": SamplerConfig(n_levels=(n,), n_weights=(1.0,)) for n in (3, 4, 6)})
    failed = False
    for label, config in configs.items():
        for seed in args.seeds:
            board = verify_theorems(config, args.trials, seed, workers=args.workers)
            total = board.violations
            failed |= total > 0
            print(f"{label:<6} seed {seed:<4} violations {total}")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
