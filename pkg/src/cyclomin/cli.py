"""Command-line entry point.

Exit codes: 0 success, 2 invalid input (bad weights, permutation or flags),
3 ambiguous minimum, 4 verification-table mismatch.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import experiments as ex
from .cyclic_matrix import WeightSequence, reduced_cubic
from .decision import analytic_minimizer, brute_force_minimizer
from .errors import DomainError, TieError
from .perm_group import Permutation, canonicalize, enumerate_representatives
from .spectral import gersh_bounds, radius_closed_form, radius_power_iteration

EXIT_OK, EXIT_INPUT, EXIT_TIE, EXIT_MISMATCH = 0, 2, 3, 4
SCHEMA = ex.SCHEMA


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclomin", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, default_output="text"):
        p.add_argument("--output", choices=("json", "csv", "text"), default=default_output)
        p.add_argument("--out", dest="out_path", help="write output to this file instead of stdout")

    def sampling(p, n_default):
        p.add_argument("--n", type=int, default=n_default)
        p.add_argument("--seed", type=int, required=True)
        p.add_argument("--samples", type=int, default=100_000)
        p.add_argument("--distribution", choices=[d.value for d in ex.Distribution],
                       default=ex.Distribution.UNIFORM_SORTED.value)

    p = sub.add_parser("radius", help="numerical radius of one weighted cyclic matrix")
    p.add_argument("--weights", required=True)
    p.add_argument("--perm", required=True)
    p.add_argument("--method", choices=("auto", "closed-form", "power"), default="auto")
    common(p)

    p = sub.add_parser("minimize", help="minimizing class by brute force and (n = 6) analytically")
    p.add_argument("--weights", required=True)
    common(p)

    p = sub.add_parser("enumerate", help="list the representatives of S_n/H_n")
    p.add_argument("--n", type=int, required=True)
    common(p)

    p = sub.add_parser("census", help="Monte Carlo minimizer frequencies")
    sampling(p, 6)
    common(p)

    p = sub.add_parser("success-rate", help="how often the analytic pipeline decides the minimizer")
    sampling(p, 6)
    common(p)

    p = sub.add_parser("conjecture", help="census plus the conjectured most frequent minimizer")
    sampling(p, 7)
    common(p)

    p = sub.add_parser("verify-paper", help="recompute the published verification tables")
    common(p)
    return parser


def _weights(text: str) -> WeightSequence:
    try:
        return WeightSequence.parse(text)
    except DomainError as exc:
        raise CliError(f"invalid weights: {exc}", EXIT_INPUT)


def _perm(text: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except DomainError as exc:
        raise CliError(f"invalid permutation: {exc}", EXIT_INPUT)


def _dump(obj: dict) -> str:
    return json.dumps({"schema": SCHEMA, **obj}, indent=2) + "\n"


def cmd_radius(args) -> tuple[str, int]:
    w, p = _weights(args.weights), _perm(args.perm)
    if w.n != p.n:
        raise CliError(f"{w.n} weights but a permutation of size {p.n}", EXIT_INPUT)
    cls = canonicalize(p)
    method = args.method
    if method == "auto":
        method = "closed-form" if w.n == 6 else "power"
    if method == "closed-form" and w.n != 6:
        raise CliError("closed form needs n = 6", EXIT_INPUT)
    res = radius_closed_form(w, cls) if method == "closed-form" else radius_power_iteration(w, cls)
    b = gersh_bounds(w, cls)
    if args.output == "json":
        return _dump({"kind": "radius", "weights": w.to_json(), "perm": p.to_json(),
                      "class": cls.to_json(), "result": res.to_json(), "bounds": b.to_json()}), EXIT_OK
    if args.output == "csv":
        return f"perm,w,t,method,iterations,residual\n\"{cls.to_csv()}\",{res.w:.12g},{res.t:.12g},{res.method.value},{res.iterations},{res.residual:.3e}\n", EXIT_OK
    return f"class {cls}\nw = {res.w:.12g}\nmethod {res.method.value} ({res.iterations} iterations, residual {res.residual:.3e})\n", EXIT_OK


def cmd_minimize(args) -> tuple[str, int]:
    w = _weights(args.weights)
    try:
        best, res = brute_force_minimizer(w)
    except TieError as exc:
        raise CliError(f"ambiguous minimum: {exc}", EXIT_TIE)
    except DomainError as exc:
        raise CliError(str(exc), EXIT_INPUT)
    outcome = analytic_minimizer(w) if w.n == 6 else None
    if args.output == "json":
        return _dump({
            "kind": "minimize",
            "weights": w.to_json(),
            "brute_force": {"perm": best.to_json(), "result": res.to_json()},
            "analytic": None if outcome is None else outcome.to_json(),
        }), EXIT_OK
    if args.output == "csv":
        analytic = "" if outcome is None or outcome.minimizer is None else outcome.minimizer.to_csv()
        return f"method,perm\nbrute_force,\"{best.to_csv()}\"\nanalytic,\"{analytic}\"\n", EXIT_OK
    lines = [f"brute force: {best}  w = {res.w:.12g}"]
    if outcome is None:
        lines.append("analytic: n/a (n != 6)")
    elif outcome.conclusive:
        lines.append(f"analytic:    {outcome.minimizer}  ({len(outcome.certificates)} certificates)")
    else:
        lines.append("analytic:    inconclusive, candidates " + " ".join(str(c) for c in outcome.candidates))
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_enumerate(args) -> tuple[str, int]:
    try:
        reps = enumerate_representatives(args.n)
    except DomainError as exc:
        raise CliError(str(exc), EXIT_INPUT)
    if args.output == "json":
        return _dump({"kind": "enumerate", "n": args.n, "representatives": [r.to_json() for r in reps]}), EXIT_OK
    if args.output == "csv":
        return "".join(r.to_csv() + "\n" for r in reps), EXIT_OK
    return "".join(str(r) + "\n" for r in reps), EXIT_OK


def _config(args) -> ex.SamplerConfig:
    try:
        return ex.SamplerConfig(n=args.n, distribution=args.distribution, seed=args.seed, samples=args.samples)
    except DomainError as exc:
        raise CliError(str(exc), EXIT_INPUT)


def _report_text(rep: ex.ExperimentReport) -> str:
    c = rep.config
    lines = [f"{rep.kind}: n={c.n} {c.distribution.value} seed={c.seed} samples={c.samples} "
             f"(counted {rep.counted}, ties {rep.ties})"]
    freqs = rep.frequencies()
    for cls in rep.ordered_classes()[:20]:
        lines.append(f"  {cls}  {rep.minimizer_counts[cls]:>8}  {100 * freqs[cls]:6.2f}%")
    if len(rep.minimizer_counts) > 20:
        lines.append(f"  ... {len(rep.minimizer_counts) - 20} more")
    lines.append(f"distinct minimizers: {len(rep.distinct_minimizers)}")
    if rep.analytic_attempts:
        lines.append(f"analytic success: {rep.analytic_success}/{rep.analytic_attempts} "
                     f"= {100 * rep.success_rate:.2f}%  (soundness violations {rep.soundness_violations})")
    if rep.pattern is not None:
        lines.append(f"pattern {rep.pattern} is modal: {rep.modal() == rep.pattern}")
    lines.append(rep.wall_notes)
    return "\n".join(lines) + "\n"


def _run_experiment(runner, args) -> tuple[str, int]:
    cfg = _config(args)
    try:
        rep = runner(cfg)
    except DomainError as exc:
        raise CliError(str(exc), EXIT_INPUT)
    if args.output == "json":
        return json.dumps(rep.to_json(), indent=2) + "\n", EXIT_OK
    if args.output == "csv":
        return rep.to_csv(), EXIT_OK
    return _report_text(rep), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    rep = ex.verify_paper_tables()
    code = EXIT_OK if rep.passed else EXIT_MISMATCH
    if args.output == "json":
        return json.dumps(rep.to_json(), indent=2) + "\n", code
    if args.output == "csv":
        rows = ["key,expected,actual,pass"] + [
            f'{c.key},"{c.expected}","{c.actual}",{c.passed}' for c in rep.cells
        ]
        return "\n".join(rows) + "\n", code
    return rep.to_text(), code


COMMANDS = {
    "radius": cmd_radius,
    "minimize": cmd_minimize,
    "enumerate": cmd_enumerate,
    "census": lambda a: _run_experiment(ex.run_minimizer_census, a),
    "success-rate": lambda a: _run_experiment(ex.run_analytic_success_rate, a),
    "conjecture": lambda a: _run_experiment(ex.run_conjecture_scan, a),
    "verify-paper": cmd_verify,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        text, code = COMMANDS[args.subcommand](args)
    except CliError as exc:
        print(f"cyclomin: error: {exc}", file=sys.stderr)
        return exc.code
    if args.out_path:
        with open(args.out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
