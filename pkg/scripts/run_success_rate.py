#!/usr/bin/env python3
"""Fraction of n = 6 weight sequences where the analytic tests alone decide the minimizer."""
import argparse
import logging

from cyclomin.experiments import Distribution, SamplerConfig, run_analytic_success_rate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=2025)
    ap.add_argument("--distribution", default="UniformSorted", choices=[d.value for d in Distribution])
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    rep = run_analytic_success_rate(SamplerConfig(6, args.distribution, args.seed, args.samples))
    print(f"{args.distribution}, {rep.analytic_attempts} sequences ({rep.ties} ties skipped)")
    print(f"analytic success: {100 * rep.success_rate:.2f}%  (reference 38%)")
    print(f"soundness violations: {rep.soundness_violations}")
    print(rep.wall_notes)


if __name__ == "__main__":
    main()
