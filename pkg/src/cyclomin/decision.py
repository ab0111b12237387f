"""Analytic radius comparisons between classes of S_6/H_6 and minimizer search.

Write P_σ for the reduced cubic of σ.  For two classes σ, μ the difference
P_σ - P_μ is the linear polynomial α x + β with

    α = cross(σ) - cross(μ),     β = -odd(σ) + odd(μ),

so the larger largest-root belongs to whichever cubic is smaller beyond the
crossing point γ = -β/α.  The three rules locate that crossing relative to the
largest root of P_σ:

* same odd set: β = 0, so the sign of α (equivalently of the adjacency-sum
  difference) decides;
* delta test: the largest root exceeds the larger critical point x_M;
* Gershgorin test: the largest root lies in [g_σ^2, G_σ^2].
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from .cyclic_matrix import (
    WeightSequence,
    adjacency_sum,
    adjacency_sum_batch,
    alpha_is_zero,
    cross_sum,
    cross_sum_batch,
    odd_product_batch,
    odd_product_term,
    perm_index_array,
)
from .errors import DomainError, TieError
from .perm_group import FAMILY_ORDER, Family, PermClass, enumerate_representatives, family_of
from .spectral import GershBounds, RadiusResult, gersh_bounds, radius, two_smallest_radii

RADIUS_TIE_RTOL = 1e-10


class Relation(str, enum.Enum):
    SIGMA_SMALLER = "SigmaStrictlySmaller"
    MU_SMALLER = "MuStrictlySmaller"
    INCONCLUSIVE = "Inconclusive"


class Rule(str, enum.Enum):
    SAME_ODD_SET = "SameOddSet"
    DELTA_TEST = "DeltaTest"
    GERSHGORIN_TEST = "GershgorinTest"


@dataclass(frozen=True)
class PairStats:
    alpha: float
    beta: float
    gamma: float | None
    delta_cap: float
    x_m: float
    x_M: float

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha, "beta": self.beta, "gamma": self.gamma,
            "delta": self.delta_cap, "x_m": self.x_m, "x_M": self.x_M,
        }


@dataclass(frozen=True)
class ComparisonVerdict:
    relation: Relation
    rule: Rule
    sigma: PermClass
    mu: PermClass
    stats: PairStats
    bounds: GershBounds | None = None

    @property
    def conclusive(self) -> bool:
        return self.relation is not Relation.INCONCLUSIVE

    def smaller(self) -> PermClass | None:
        if self.relation is Relation.SIGMA_SMALLER:
            return self.sigma
        if self.relation is Relation.MU_SMALLER:
            return self.mu
        return None

    def to_json(self) -> dict:
        d = {
            "rule": self.rule.value,
            "relation": self.relation.value,
            "sigma": self.sigma.to_json(),
            "mu": self.mu.to_json(),
            **self.stats.to_json(),
            "g2": None,
            "G2": None,
        }
        if self.bounds is not None:
            d["g2"], d["G2"] = self.bounds.g2, self.bounds.G2
        return d


# Minimizer of each family, in FAMILY_ORDER.
FAMILY_MINIMIZERS: tuple[PermClass, ...] = tuple(
    PermClass.of(p) for p in (
        (1, 5, 3, 4, 2, 6), (1, 5, 4, 3, 2, 6), (1, 4, 5, 3, 2, 6), (1, 4, 6, 3, 2, 5),
        (1, 5, 4, 2, 3, 6), (1, 4, 5, 2, 3, 6), (1, 4, 6, 2, 3, 5), (1, 3, 5, 2, 4, 6),
        (1, 3, 6, 2, 4, 5), (1, 3, 6, 2, 5, 4),
    )
)

# The five other members of each family, in the order they are tabulated.
FAMILY_OPPONENTS: tuple[tuple[PermClass, ...], ...] = tuple(
    tuple(PermClass.of(p) for p in rows) for rows in (
        ((1, 4, 3, 5, 2, 6), (1, 4, 2, 6, 3, 5), (1, 4, 2, 5, 3, 6), (1, 4, 3, 6, 2, 5), (1, 5, 2, 4, 3, 6)),
        ((1, 3, 4, 6, 2, 5), (1, 3, 4, 5, 2, 6), (1, 5, 2, 3, 4, 6), (1, 3, 2, 5, 4, 6), (1, 3, 2, 6, 4, 5)),
        ((1, 3, 5, 6, 2, 4), (1, 4, 2, 3, 5, 6), (1, 3, 2, 6, 5, 4), (1, 3, 2, 4, 5, 6), (1, 3, 5, 4, 2, 6)),
        ((1, 4, 2, 3, 6, 5), (1, 3, 6, 4, 2, 5), (1, 3, 6, 5, 2, 4), (1, 3, 2, 4, 6, 5), (1, 3, 2, 5, 6, 4)),
        ((1, 2, 4, 6, 3, 5), (1, 5, 3, 2, 4, 6), (1, 2, 3, 6, 4, 5), (1, 2, 3, 5, 4, 6), (1, 2, 4, 5, 3, 6)),
        ((1, 2, 5, 4, 3, 6), (1, 2, 3, 4, 5, 6), (1, 4, 3, 2, 5, 6), (1, 2, 3, 6, 5, 4), (1, 2, 5, 6, 3, 4)),
        ((1, 4, 3, 2, 6, 5), (1, 2, 3, 4, 6, 5), (1, 2, 6, 5, 3, 4), (1, 2, 6, 4, 3, 5), (1, 2, 3, 5, 6, 4)),
        ((1, 2, 5, 3, 4, 6), (1, 2, 5, 6, 4, 3), (1, 2, 4, 3, 5, 6), (1, 2, 4, 6, 5, 3), (1, 3, 4, 2, 5, 6)),
        ((1, 2, 4, 5, 6, 3), (1, 2, 6, 5, 4, 3), (1, 2, 4, 3, 6, 5), (1, 3, 4, 2, 6, 5), (1, 2, 6, 3, 4, 5)),
        ((1, 2, 5, 4, 6, 3), (1, 3, 5, 2, 6, 4), (1, 2, 5, 3, 6, 4), (1, 2, 6, 4, 5, 3), (1, 2, 6, 3, 5, 4)),
    )
)

M6: tuple[PermClass, ...] = tuple(
    PermClass.of(p) for p in (
        (1, 5, 3, 4, 2, 6), (1, 4, 5, 3, 2, 6), (1, 5, 4, 3, 2, 6), (1, 5, 4, 2, 3, 6), (1, 4, 5, 2, 3, 6),
    )
)

# Family minimizers that never minimize overall.
ELIMINATED: tuple[PermClass, ...] = tuple(
    PermClass.of(p) for p in (
        (1, 4, 6, 3, 2, 5), (1, 4, 6, 2, 3, 5), (1, 3, 6, 2, 5, 4), (1, 3, 5, 2, 4, 6), (1, 3, 6, 2, 4, 5),
    )
)


def family_minimizer(f: Family) -> PermClass:
    return FAMILY_MINIMIZERS[FAMILY_ORDER.index(f)]


def m6_set() -> list[PermClass]:
    return list(M6)


def _require_six(w: WeightSequence):
    if w.n != 6:
        raise DomainError(f"only defined for n = 6, got n = {w.n}")


def pair_stats(w: WeightSequence, s: PermClass, m: PermClass) -> PairStats:
    _require_six(w)
    sum_sq = float(np.sum(w.array ** 2))
    cs = cross_sum(w, s)
    alpha = cs - cross_sum(w, m)
    beta = -odd_product_term(w, s) + odd_product_term(w, m)
    gamma = None if alpha_is_zero(alpha, sum_sq) else -beta / alpha
    delta = sum_sq * sum_sq - 3.0 * cs
    root = float(np.sqrt(max(delta, 0.0)))
    return PairStats(alpha, beta, gamma, delta, (sum_sq - root) / 3.0, (sum_sq + root) / 3.0)


def compare_same_odd_set(w: WeightSequence, s: PermClass, m: PermClass) -> ComparisonVerdict:
    if family_of(s) != family_of(m):
        raise DomainError(f"{s} and {m} are in different families")
    stats = pair_stats(w, s, m)
    diff = adjacency_sum(w, s) - adjacency_sum(w, m)
    sum_sq = float(np.sum(w.array ** 2))
    if alpha_is_zero(diff, sum_sq):
        rel = Relation.INCONCLUSIVE
    elif diff < 0:
        rel = Relation.SIGMA_SMALLER
    else:
        rel = Relation.MU_SMALLER
    return ComparisonVerdict(rel, Rule.SAME_ODD_SET, s, m, stats)


def delta_test(w: WeightSequence, s: PermClass, m: PermClass) -> ComparisonVerdict:
    stats = pair_stats(w, s, m)
    sum_sq = float(np.sum(w.array ** 2))
    rel = Relation.INCONCLUSIVE
    if stats.gamma is None:
        if abs(stats.beta) > 1e-12 * sum_sq ** 3:
            rel = Relation.SIGMA_SMALLER if stats.beta > 0 else Relation.MU_SMALLER
    elif stats.gamma <= stats.x_M:
        rel = Relation.SIGMA_SMALLER if stats.alpha > 0 else Relation.MU_SMALLER
    return ComparisonVerdict(rel, Rule.DELTA_TEST, s, m, stats)


def gershgorin_test(w: WeightSequence, s: PermClass, m: PermClass) -> ComparisonVerdict:
    stats = pair_stats(w, s, m)
    bounds = gersh_bounds(w, s)
    rel = Relation.INCONCLUSIVE
    if stats.gamma is not None:
        if (stats.alpha < 0 and stats.gamma > bounds.G2) or (stats.alpha > 0 and stats.gamma < bounds.g2):
            rel = Relation.SIGMA_SMALLER
    return ComparisonVerdict(rel, Rule.GERSHGORIN_TEST, s, m, stats, bounds)


@dataclass(frozen=True)
class AnalyticOutcome:
    """Result of the analytic pipeline.

    ``minimizer`` is set only when a single candidate survives; ``candidates``
    holds every candidate no test showed to be beaten.
    """

    minimizer: PermClass | None
    candidates: tuple[PermClass, ...]
    certificates: tuple[ComparisonVerdict, ...] = field(repr=False)

    @property
    def conclusive(self) -> bool:
        return self.minimizer is not None

    def to_json(self) -> dict:
        return {
            "conclusive": self.conclusive,
            "minimizer": None if self.minimizer is None else self.minimizer.to_json(),
            "candidates": [c.to_json() for c in self.candidates],
            "certificates": [v.to_json() for v in self.certificates],
        }


def analytic_minimizer(w: WeightSequence) -> AnalyticOutcome:
    """Decide the minimizer from the family minimizers with the Gershgorin and delta tests.

    Every ordered pair of family minimizers is tested (Gershgorin first).  A
    candidate beaten by any other is dropped; beaten-by is a strict order
    consistent with the true radii, so a unique survivor is beaten by nobody
    and, by following chains of wins, beats everyone.
    """
    _require_six(w)
    cands = FAMILY_MINIMIZERS
    beaten = [False] * len(cands)
    certs = []
    for i, j in itertools.permutations(range(len(cands)), 2):
        for test in (gershgorin_test, delta_test):
            v = test(w, cands[i], cands[j])
            if v.relation is Relation.SIGMA_SMALLER:
                beaten[j] = True
            elif v.relation is Relation.MU_SMALLER:
                beaten[i] = True
            else:
                continue
            certs.append(v)
            break
    survivors = tuple(c for c, b in zip(cands, beaten) if not b)
    winner = survivors[0] if len(survivors) == 1 else None
    return AnalyticOutcome(winner, survivors, tuple(certs))


# ---------------------------------------------------------------------------
# vectorized rules over (B, K) candidate statistics


def pairwise_wins(c1, odd, sum_sq, g2, G2):
    """Boolean (B, K, K) array: entry [b, i, j] means class i provably beats class j.

    Arguments are (B, K) arrays except ``sum_sq`` of shape (B,).
    """
    s = sum_sq[:, None, None]
    alpha = c1[:, :, None] - c1[:, None, :]
    beta = -odd[:, :, None] + odd[:, None, :]
    zero = alpha_is_zero(alpha, s)
    safe = np.where(zero, 1.0, alpha)
    gamma = -beta / safe
    x_M = (s[..., 0] + np.sqrt(np.maximum(s[..., 0] ** 2 - 3.0 * c1, 0.0))) / 3.0
    x_M = x_M[:, :, None]
    pos, neg = ~zero & (alpha > 0), ~zero & (alpha < 0)

    gersh = (neg & (gamma > G2[:, :, None])) | (pos & (gamma < g2[:, :, None]))
    near = gamma <= x_M
    beta_nz = np.abs(beta) > 1e-12 * s ** 3
    delta_sigma = (pos & near) | (zero & beta_nz & (beta > 0))
    delta_mu = (neg & near) | (zero & beta_nz & (beta < 0))

    wins = gersh | delta_sigma | np.swapaxes(delta_mu, 1, 2)
    k = c1.shape[1]
    wins[:, np.arange(k), np.arange(k)] = False
    return wins


def gersh_batch(a, idx):
    e = np.asarray(a, dtype=float)[:, idx]
    sums = e + np.roll(e, -1, axis=-1)
    return np.min(sums, axis=-1) ** 2, np.max(sums, axis=-1) ** 2


def analytic_minimizer_batch(a, candidates=FAMILY_MINIMIZERS):
    """Index into ``candidates`` of the analytic minimizer per row, -1 if inconclusive."""
    a = np.asarray(a, dtype=float)
    idx = perm_index_array(candidates)
    g2, G2 = gersh_batch(a, idx)
    wins = pairwise_wins(
        cross_sum_batch(a, idx), odd_product_batch(a, idx), np.sum(a * a, axis=1), g2, G2,
    )
    beaten = wins.any(axis=1)
    alive = ~beaten
    winner = np.where(alive.sum(axis=1) == 1, np.argmax(alive, axis=1), -1)
    return winner


# ---------------------------------------------------------------------------
# brute force


def brute_force_batch(a, reps=None):
    """Argmin index into ``reps`` per row, plus a mask of rows with an ambiguous minimum."""
    a = np.asarray(a, dtype=float)
    n = a.shape[1]
    if reps is None:
        reps = enumerate_representatives(n)
    best, w1, w2, _ = two_smallest_radii(a, perm_index_array(reps))
    tie = (w2 - w1) < RADIUS_TIE_RTOL * w1
    return best, tie, w1


def brute_force_minimizer(w: WeightSequence) -> tuple[PermClass, RadiusResult]:
    if not 4 <= w.n <= 8:
        raise DomainError(f"brute force supports 4 <= n <= 8, got n = {w.n}")
    reps = enumerate_representatives(w.n)
    best, w1, w2, second = two_smallest_radii(w.array[None, :], perm_index_array(reps))
    b, s = reps[int(best[0])], reps[int(second[0])]
    if w2[0] - w1[0] < RADIUS_TIE_RTOL * w1[0]:
        raise TieError(f"ambiguous minimum between {b} and {s}", (b, s), (float(w1[0]), float(w2[0])))
    return b, radius(w, b)


def adjacency_argmin_check(w: WeightSequence) -> PermClass:
    _require_six(w)
    reps = enumerate_representatives(6)
    sums = adjacency_sum_batch(w.array[None, :], perm_index_array(reps))[0]
    order = np.argsort(sums, kind="stable")
    if sums[order[1]] - sums[order[0]] <= RADIUS_TIE_RTOL * abs(sums[order[0]]):
        raise TieError(
            "ambiguous adjacency-sum minimum", (reps[order[0]], reps[order[1]]),
            (float(sums[order[0]]), float(sums[order[1]])),
        )
    return reps[int(order[0])]


def constant_term_family_check(w: WeightSequence) -> Family:
    """Family whose members minimize the constant-term part -odd(σ)."""
    _require_six(w)
    values = [-odd_product_term(w, family_minimizer(f)) for f in FAMILY_ORDER]
    return FAMILY_ORDER[int(np.argmin(values))]
