#!/usr/bin/env python3
"""Census for n = 7 (or other n <= 8) and whether the transposition pattern is modal."""
import argparse
import logging
from pathlib import Path

from cyclomin.experiments import Distribution, SamplerConfig, run_conjecture_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=2026)
    ap.add_argument("--distribution", default="UniformSorted", choices=[d.value for d in Distribution])
    ap.add_argument("--csv", type=Path)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    rep = run_conjecture_scan(SamplerConfig(args.n, args.distribution, args.seed, args.samples))
    freqs = rep.frequencies()
    modal = rep.modal()
    print(f"n={args.n}: {len(rep.distinct_minimizers)} distinct minimizers over {rep.counted} samples "
          f"({rep.ties} ties)")
    print(f"pattern {rep.pattern}: {100 * freqs.get(rep.pattern, 0):.2f}%")
    print(f"modal   {modal}: {100 * freqs[modal]:.2f}%  -> pattern is modal: {modal == rep.pattern}")
    print(rep.wall_notes)
    if args.csv:
        args.csv.write_text(rep.to_csv())


if __name__ == "__main__":
    main()
