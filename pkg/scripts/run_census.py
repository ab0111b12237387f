#!/usr/bin/env python3
"""Minimizer census: how often each class minimizes the numerical radius.

    python scripts/run_census.py --n 6 --samples 100000 --seed 2024
"""
import argparse
import json
import logging
from pathlib import Path

from cyclomin.decision import M6
from cyclomin.experiments import Distribution, SamplerConfig, run_minimizer_census

# published shares of the five n = 6 minimizers, same order as M6
REFERENCE = (0.636, 0.128, 0.134, 0.102, 0.010)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--distribution", default="UniformSorted", choices=[d.value for d in Distribution])
    ap.add_argument("--json", type=Path, help="also write the full report here")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    rep = run_minimizer_census(SamplerConfig(args.n, args.distribution, args.seed, args.samples))
    freqs = rep.frequencies()
    print(f"n={args.n} {args.distribution} seed={args.seed}: {rep.counted} counted, {rep.ties} ties")
    for cls in rep.ordered_classes()[:15]:
        line = f"  {str(cls):<24} {100 * freqs[cls]:6.2f}%"
        if args.n == 6 and cls in M6:
            line += f"   (reference {100 * REFERENCE[M6.index(cls)]:.1f}%)"
        print(line)
    print(f"distinct minimizers: {len(rep.distinct_minimizers)}   [{rep.wall_notes}]")
    if args.json:
        args.json.write_text(json.dumps(rep.to_json(), indent=2))


if __name__ == "__main__":
    main()
