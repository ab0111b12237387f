"""Seeded Monte Carlo experiments and the golden table verification.

Random numbers come from numpy's PCG64.  Samples are generated in fixed-size
blocks; block ``b`` of a run with seed ``s`` draws from
``SeedSequence(s, spawn_key=(b,))``, so any sharding of the block range
reproduces the same stream.
"""
from __future__ import annotations

import enum
import logging
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .cyclic_matrix import WeightSequence, cross_sum
from .decision import (
    ELIMINATED,
    FAMILY_MINIMIZERS,
    M6,
    Relation,
    analytic_minimizer_batch,
    brute_force_batch,
    delta_test,
    gershgorin_test,
    pair_stats,
)
from .errors import DomainError, SoundnessError
from .perm_group import PermClass, conjecture_pattern, enumerate_representatives
from .spectral import gersh_bounds

log = logging.getLogger(__name__)

SCHEMA = "cyclomin/1"
BLOCK_SIZE = 4096
MIN_GAP = 1e-12


class Distribution(str, enum.Enum):
    UNIFORM_SORTED = "UniformSorted"
    LOG_UNIFORM_SORTED = "LogUniformSorted"


@dataclass(frozen=True)
class SamplerConfig:
    n: int = 6
    distribution: Distribution = Distribution.UNIFORM_SORTED
    seed: int = 0
    samples: int = 1000

    def __post_init__(self):
        object.__setattr__(self, "distribution", Distribution(self.distribution))
        if self.samples < 1:
            raise DomainError("samples must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        if self.n < 3:
            raise DomainError("n must be >= 3")

    def to_json(self) -> dict:
        return {"n": self.n, "distribution": self.distribution.value, "seed": self.seed, "samples": self.samples}


def _draw(rng: np.random.Generator, dist: Distribution, size: tuple[int, int]) -> np.ndarray:
    if dist is Distribution.UNIFORM_SORTED:
        x = rng.random(size)
    else:
        # log-uniform on [1e-3, 1)
        x = 10.0 ** rng.uniform(-3.0, 0.0, size)
    return np.sort(x, axis=1)


def block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def sample_block(cfg: SamplerConfig, block: int) -> np.ndarray:
    """Weights of block ``block`` as a (rows, n) array; rows with too small gaps are redrawn."""
    start = block * BLOCK_SIZE
    rows = min(BLOCK_SIZE, cfg.samples - start)
    if rows <= 0:
        raise IndexError(block)
    rng = block_rng(cfg.seed, block)
    a = _draw(rng, cfg.distribution, (rows, cfg.n))
    while True:
        bad = np.nonzero(np.min(np.diff(a, axis=1), axis=1) <= MIN_GAP)[0]
        if bad.size == 0:
            return a
        a[bad] = _draw(rng, cfg.distribution, (bad.size, cfg.n))


def num_blocks(cfg: SamplerConfig) -> int:
    return -(-cfg.samples // BLOCK_SIZE)


def sample_blocks(cfg: SamplerConfig) -> Iterator[np.ndarray]:
    for b in range(num_blocks(cfg)):
        yield sample_block(cfg, b)


def sample_weights(cfg: SamplerConfig) -> Iterator[WeightSequence]:
    for block in sample_blocks(cfg):
        for row in block:
            yield WeightSequence(tuple(row))


def worker_count() -> int:
    """Worker processes from CYCLOMIN_THREADS (0 or unset: one per CPU)."""
    raw = os.environ.get("CYCLOMIN_THREADS", "0")
    try:
        k = int(raw)
    except ValueError:
        raise DomainError(f"CYCLOMIN_THREADS must be an integer, got {raw!r}")
    return k if k > 0 else (os.cpu_count() or 1)


@dataclass
class ExperimentReport:
    config: SamplerConfig
    kind: str = "census"
    minimizer_counts: dict[PermClass, int] = field(default_factory=dict)
    ties: int = 0
    analytic_success: int = 0
    analytic_attempts: int = 0
    soundness_violations: int = 0
    pattern: PermClass | None = None
    wall_notes: str = ""

    @property
    def distinct_minimizers(self) -> set[PermClass]:
        return {k for k, v in self.minimizer_counts.items() if v > 0}

    @property
    def counted(self) -> int:
        return sum(self.minimizer_counts.values())

    def frequencies(self) -> dict[PermClass, float]:
        total = self.counted
        return {k: v / total for k, v in self.minimizer_counts.items()} if total else {}

    def ordered_classes(self) -> list[PermClass]:
        """M_6 order first (n = 6), then by decreasing count."""
        rest = sorted(self.minimizer_counts, key=lambda c: (-self.minimizer_counts[c], c.images))
        if self.config.n == 6:
            head = [c for c in M6 if c in self.minimizer_counts]
            rest = head + [c for c in rest if c not in head]
        return rest

    def modal(self) -> PermClass | None:
        if not self.minimizer_counts:
            return None
        return min(self.minimizer_counts, key=lambda c: (-self.minimizer_counts[c], c.images))

    @property
    def success_rate(self) -> float | None:
        return self.analytic_success / self.analytic_attempts if self.analytic_attempts else None

    def merge(self, other: "ExperimentReport") -> "ExperimentReport":
        counts = Counter(self.minimizer_counts)
        counts.update(other.minimizer_counts)
        self.minimizer_counts = dict(counts)
        self.ties += other.ties
        self.analytic_success += other.analytic_success
        self.analytic_attempts += other.analytic_attempts
        self.soundness_violations += other.soundness_violations
        return self

    def to_json(self, include_notes: bool = True) -> dict:
        freqs = self.frequencies()
        d = {
            "schema": SCHEMA,
            "kind": self.kind,
            "config": self.config.to_json(),
            "counted": self.counted,
            "ties": self.ties,
            "minimizers": [
                {"perm": c.to_json(), "count": self.minimizer_counts[c], "frequency": freqs[c]}
                for c in self.ordered_classes()
            ],
            "distinct_minimizers": len(self.distinct_minimizers),
            "analytic_success": self.analytic_success,
            "analytic_attempts": self.analytic_attempts,
            "success_rate": self.success_rate,
            "soundness_violations": self.soundness_violations,
        }
        if self.pattern is not None:
            modal = self.modal()
            d["pattern"] = self.pattern.to_json()
            d["pattern_is_modal"] = modal == self.pattern
            d["modal"] = None if modal is None else modal.to_json()
        if include_notes:
            d["wall_notes"] = self.wall_notes
        return d

    @classmethod
    def from_json(cls, d: dict) -> "ExperimentReport":
        if d.get("schema") != SCHEMA:
            raise DomainError(f"unsupported schema {d.get('schema')!r}")
        rep = cls(
            config=SamplerConfig(**d["config"]),
            kind=d["kind"],
            minimizer_counts={PermClass.of(m["perm"]): int(m["count"]) for m in d["minimizers"]},
            ties=int(d["ties"]),
            analytic_success=int(d["analytic_success"]),
            analytic_attempts=int(d["analytic_attempts"]),
            soundness_violations=int(d["soundness_violations"]),
            pattern=PermClass.of(d["pattern"]) if d.get("pattern") else None,
            wall_notes=d.get("wall_notes", ""),
        )
        return rep

    def to_csv(self) -> str:
        freqs = self.frequencies()
        lines = ["perm,count,frequency"]
        for c in self.ordered_classes():
            lines.append(f'"{c.to_csv()}",{self.minimizer_counts[c]},{freqs[c]:.6f}')
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# block workers (module level so they pickle)


def _census_block(cfg: SamplerConfig, block: int) -> ExperimentReport:
    a = sample_block(cfg, block)
    reps = enumerate_representatives(cfg.n)
    best, tie, _ = brute_force_batch(a, reps)
    counts = Counter(best[~tie].tolist())
    return ExperimentReport(cfg, minimizer_counts={reps[k]: v for k, v in counts.items()}, ties=int(tie.sum()))


def _success_block(cfg: SamplerConfig, block: int) -> ExperimentReport:
    a = sample_block(cfg, block)
    reps = enumerate_representatives(6)
    best, tie, _ = brute_force_batch(a, reps)
    win = analytic_minimizer_batch(a)
    lookup = np.array([reps.index(c) for c in FAMILY_MINIMIZERS])
    ok = ~tie
    conclusive = ok & (win >= 0)
    agree = lookup[np.where(conclusive, win, 0)] == best
    wrong = conclusive & ~agree
    rep = ExperimentReport(
        cfg,
        kind="success-rate",
        minimizer_counts={reps[k]: v for k, v in Counter(best[ok].tolist()).items()},
        ties=int(tie.sum()),
        analytic_success=int((conclusive & agree).sum()),
        analytic_attempts=int(ok.sum()),
        soundness_violations=int(wrong.sum()),
    )
    if wrong.any():
        i = int(np.nonzero(wrong)[0][0])
        raise SoundnessError(
            f"analytic verdict {FAMILY_MINIMIZERS[win[i]]} contradicts brute force "
            f"{reps[best[i]]} for a = {a[i].tolist()}"
        )
    return rep


def _run_blocks(worker, cfg: SamplerConfig, kind: str, workers: int | None) -> ExperimentReport:
    t0 = time.perf_counter()
    workers = worker_count() if workers is None else workers
    blocks = range(num_blocks(cfg))
    report = ExperimentReport(cfg, kind=kind)
    if workers <= 1 or len(blocks) == 1:
        parts = (worker(cfg, b) for b in blocks)
        for part in parts:
            report.merge(part)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(worker, [cfg] * len(blocks), blocks):
                report.merge(part)
    report.kind = kind
    report.wall_notes = f"{time.perf_counter() - t0:.2f}s wall, {max(workers, 1)} worker(s)"
    log.info("%s n=%d samples=%d: %s", kind, cfg.n, cfg.samples, report.wall_notes)
    return report


def run_minimizer_census(cfg: SamplerConfig, workers: int | None = None) -> ExperimentReport:
    if not 4 <= cfg.n <= 8:
        raise DomainError(f"census supports 4 <= n <= 8, got n = {cfg.n}")
    return _run_blocks(_census_block, cfg, "census", workers)


def run_analytic_success_rate(cfg: SamplerConfig, workers: int | None = None) -> ExperimentReport:
    if cfg.n != 6:
        raise DomainError("the analytic pipeline needs n = 6")
    return _run_blocks(_success_block, cfg, "success-rate", workers)


def run_conjecture_scan(cfg: SamplerConfig, workers: int | None = None) -> ExperimentReport:
    report = run_minimizer_census(cfg, workers)
    report.kind = "conjecture"
    report.pattern = conjecture_pattern(cfg.n)
    return report


# ---------------------------------------------------------------------------
# published verification tables


@dataclass(frozen=True)
class _Block:
    sigma: tuple[int, ...]
    a: tuple[float, ...]
    g2: str
    G2: str
    rows: tuple[tuple[tuple[int, ...], int, str], ...]  # (mu, sign of alpha, gamma)
    gamma_tol: float = 1e-3


GOLDEN_BLOCKS: tuple[_Block, ...] = (
    _Block((1, 5, 3, 4, 2, 6), (1, 1.3, 1.7, 6.3, 6.8, 7.1), "57.76", "72.25", (
        ((1, 4, 5, 3, 2, 6), +1, "52.464"),
        ((1, 5, 4, 3, 2, 6), +1, "52.284"),
        ((1, 5, 4, 2, 3, 6), +1, "53.541"),
        ((1, 4, 5, 2, 3, 6), +1, "53.721"),
    )),
    _Block((1, 4, 5, 3, 2, 6), (1, 1.3, 1.4, 1.6, 2, 5), "6.76", "39.69", (
        ((1, 5, 3, 4, 2, 6), -1, "45.915"),
        ((1, 5, 4, 3, 2, 6), -1, "49.281"),
        ((1, 5, 4, 2, 3, 6), +1, "-8.942"),
        ((1, 4, 5, 2, 3, 6), +1, "2.857"),
    )),
    _Block((1, 5, 4, 3, 2, 6), (1, 1.15, 1.22, 1.25, 1.3, 1.6), "5.29", "7.562", (
        ((1, 5, 3, 4, 2, 6), -1, "8.174"),
        ((1, 4, 5, 3, 2, 6), +1, "5.094"),
        ((1, 5, 4, 2, 3, 6), +1, "2.771"),
        ((1, 4, 5, 2, 3, 6), +1, "3.39"),
    )),
    _Block((1, 5, 4, 2, 3, 6), (1, 3.4, 3.8, 4.2, 4.3, 4.5), "28.09", "72.25", (
        ((1, 5, 3, 4, 2, 6), -1, "73.711"),
        ((1, 4, 5, 3, 2, 6), +1, "-201.887"),
        ((1, 5, 4, 3, 2, 6), -1, "136.698"),
        ((1, 4, 5, 2, 3, 6), +1, "20.8"),
    )),
    _Block((1, 4, 5, 2, 3, 6), (1, 1.03, 49.7, 53.5, 53.7, 54.7), "2573.533", "11491.84", (
        ((1, 5, 3, 4, 2, 6), -1, "17008.607"),
        ((1, 4, 5, 3, 2, 6), -1, "78978.099"),
        ((1, 5, 4, 3, 2, 6), -1, "66430.751"),
        ((1, 5, 4, 2, 3, 6), -1, "11563.519"),
    ), gamma_tol=1e-2),
)

# (winner, loser, rule) for the five family minimizers that never win overall
ELIMINATIONS: tuple[tuple[tuple[int, ...], tuple[int, ...], str], ...] = (
    ((1, 4, 5, 2, 3, 6), (1, 4, 6, 3, 2, 5), "gershgorin"),
    ((1, 4, 5, 2, 3, 6), (1, 4, 6, 2, 3, 5), "gershgorin"),
    ((1, 3, 6, 2, 4, 5), (1, 3, 6, 2, 5, 4), "gershgorin"),
    ((1, 4, 5, 2, 3, 6), (1, 3, 5, 2, 4, 6), "delta"),
    ((1, 4, 5, 2, 3, 6), (1, 3, 6, 2, 4, 5), "delta"),
)


def golden_weights() -> list[tuple[PermClass, WeightSequence]]:
    return [(PermClass.of(b.sigma), WeightSequence(b.a)) for b in GOLDEN_BLOCKS]


def _printed_tol(text: str) -> float:
    decimals = len(text.split(".")[1]) if "." in text else 0
    return 0.5 * 10.0 ** (-decimals) + 1e-9


@dataclass(frozen=True)
class Cell:
    key: str
    expected: object
    actual: object
    tolerance: float | None
    passed: bool

    def to_json(self) -> dict:
        return {"expected": self.expected, "actual": self.actual, "tolerance": self.tolerance, "pass": self.passed}

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.key} expected={self.expected} actual={self.actual}"


@dataclass
class VerificationReport:
    cells: list[Cell]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    def failures(self) -> list[Cell]:
        return [c for c in self.cells if not c.passed]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "verify-paper",
            "pass": self.passed,
            "cells": {c.key: c.to_json() for c in self.cells},
        }

    def to_text(self) -> str:
        lines = [c.line() for c in self.cells]
        lines.append(f"{sum(c.passed for c in self.cells)}/{len(self.cells)} checks passed")
        return "\n".join(lines) + "\n"


def verify_paper_tables(elimination_samples: int = 1000, seed: int = 0) -> VerificationReport:
    """Recompute the five golden blocks and re-run the five eliminations on random weights."""
    cells: list[Cell] = []
    for t, block in enumerate(GOLDEN_BLOCKS, start=1):
        w = WeightSequence(block.a)
        sigma = PermClass.of(block.sigma)
        gb = gersh_bounds(w, sigma)
        for name, printed, value in (("g2", block.g2, gb.g2), ("G2", block.G2, gb.G2)):
            tol = _printed_tol(printed)
            cells.append(Cell(f"table{t}.{name}", float(printed), round(value, 6), tol,
                              abs(value - float(printed)) <= tol))
        for r, (mu, sign, printed) in enumerate(block.rows, start=1):
            st = pair_stats(w, sigma, PermClass.of(mu))
            ok_sign = st.gamma is not None and np.sign(st.alpha) == sign
            gamma = st.gamma if st.gamma is not None else float("nan")
            ok = ok_sign and abs(gamma - float(printed)) <= block.gamma_tol
            cells.append(Cell(
                f"table{t}.row{r}.gamma",
                f"{float(printed)} (alpha{'>' if sign > 0 else '<'}0)",
                f"{gamma:.4f} (alpha{'>' if st.alpha > 0 else '<' if st.alpha < 0 else '='}0)",
                block.gamma_tol, bool(ok),
            ))

    cfg = SamplerConfig(n=6, seed=seed, samples=elimination_samples)
    weights = list(sample_weights(cfg))
    for e, (win, lose, rule) in enumerate(ELIMINATIONS, start=1):
        s, m = PermClass.of(win), PermClass.of(lose)
        test = gershgorin_test if rule == "gershgorin" else delta_test
        hits = sum(test(w, s, m).relation is Relation.SIGMA_SMALLER for w in weights)
        cells.append(Cell(f"elimination{e}.{rule}", elimination_samples, hits, None, hits == elimination_samples))
    return VerificationReport(cells)
