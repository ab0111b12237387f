"""Weighted cyclic matrices and the permutation-dependent coefficients of their
reduced characteristic polynomial.

For n = 6 the characteristic polynomial of the doubled real part is even, and
substituting x^2 -> x leaves the monic cubic

    x^3 - (sum a_i^2) x^2 + cross(σ) x - odd(σ) - 2 a_1...a_6

whose largest root is 4 w(A_σ)^2.  The scalar functions below work on
``WeightSequence``/``PermClass`` values; the ``*_batch`` variants take a weight
array of shape (B, n) and a 0-based index array of shape (K, n) and return
(B, K) arrays.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, NegativeWeightError, NonIncreasingWeightsError
from .perm_group import PermClass, Permutation

# Index pairs (i, j) of the 9-term middle coefficient, 1-indexed positions.
CROSS_PAIRS: tuple[tuple[int, int], ...] = (
    (1, 3), (1, 4), (1, 5), (2, 4), (2, 5), (2, 6), (3, 5), (3, 6), (4, 6),
)
_CROSS_I = np.array([i - 1 for i, _ in CROSS_PAIRS])
_CROSS_J = np.array([j - 1 for _, j in CROSS_PAIRS])

# |α| below this fraction of (Σ a_i^2)^2 counts as zero.
ALPHA_ZERO_RTOL = 1e-12


@dataclass(frozen=True)
class WeightSequence:
    """Strictly increasing nonnegative weights 0 <= a_1 < ... < a_n."""

    a: tuple[float, ...]

    def __post_init__(self):
        a = tuple(float(v) for v in self.a)
        object.__setattr__(self, "a", a)
        validate_weights(a)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.a, dtype=float)

    @classmethod
    def parse(cls, text: str) -> "WeightSequence":
        try:
            values = [float(s) for s in text.strip().strip("[]").split(",") if s.strip()]
        except ValueError as exc:
            raise DomainError(f"cannot parse weights {text!r}") from exc
        return cls(tuple(values))

    @classmethod
    def unchecked(cls, values: Iterable[float]) -> "WeightSequence":
        """Bypass validation; for degenerate inputs in tests (e.g. equal weights)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", tuple(float(v) for v in values))
        return obj

    def to_json(self) -> list[float]:
        return list(self.a)

    def to_csv(self) -> str:
        return ",".join(repr(v) for v in self.a)


def validate_weights(a: Sequence[float]):
    if len(a) < 3:
        raise DomainError(f"need at least 3 weights, got {len(a)}")
    if not all(np.isfinite(a)):
        raise DomainError("weights must be finite")
    if a[0] < 0:
        raise NegativeWeightError(f"weights must be nonnegative, got a_1 = {a[0]}")
    for i in range(1, len(a)):
        if not a[i] > a[i - 1]:
            raise NonIncreasingWeightsError(
                f"weights must be strictly increasing: a_{i} = {a[i - 1]} >= a_{i + 1} = {a[i]}"
            )


@dataclass(frozen=True)
class Increments:
    r: tuple[float, ...]

    def prefix_sums(self) -> np.ndarray:
        return np.cumsum(self.r)


@dataclass(frozen=True)
class CubicPoly:
    """Monic cubic x^3 + c2 x^2 + c1 x + c0."""

    c2: float
    c1: float
    c0: float

    def __call__(self, x):
        return ((x + self.c2) * x + self.c1) * x + self.c0

    def derivative(self, x):
        return (3 * x + 2 * self.c2) * x + self.c1

    def to_json(self) -> dict:
        return {"c2": self.c2, "c1": self.c1, "c0": self.c0}

    @classmethod
    def from_json(cls, d: dict) -> "CubicPoly":
        return cls(float(d["c2"]), float(d["c1"]), float(d["c0"]))


@dataclass(frozen=True)
class CyclicMatrix:
    weights: WeightSequence
    perm: PermClass
    entries: np.ndarray


def _check_dims(w: WeightSequence, p: PermClass | Permutation):
    if w.n != p.n:
        raise DomainError(f"dimension mismatch: {w.n} weights, permutation of size {p.n}")


def _check_six(w: WeightSequence, p: PermClass | Permutation):
    _check_dims(w, p)
    if w.n != 6:
        raise DomainError(f"only defined for n = 6, got n = {w.n}")


def cycle_weights(w: WeightSequence, p: PermClass | Permutation) -> np.ndarray:
    """Edge weights around the cycle: entry i is a_{σ(i+1)} (0-based i)."""
    _check_dims(w, p)
    a = w.array
    return a[np.asarray(p.images) - 1]


def increments(w: WeightSequence) -> Increments:
    sq = w.array ** 2
    return Increments(tuple(np.diff(sq, prepend=0.0)))


def build_matrix(w: WeightSequence, p: PermClass) -> CyclicMatrix:
    e = cycle_weights(w, p)
    n = w.n
    m = np.zeros((n, n))
    idx = np.arange(n - 1)
    m[idx, idx + 1] = e[:-1]
    m[n - 1, 0] = e[-1]
    return CyclicMatrix(w, p, m)


def real_part_doubled(m: CyclicMatrix) -> np.ndarray:
    """A + A^T, the symmetric weighted cycle."""
    return m.entries + m.entries.T


def adjacency_sum(w: WeightSequence, p: PermClass | Permutation) -> float:
    """Σ_i a_{σ(i)}^2 a_{σ(i+1)}^2 with cyclic wrap."""
    e2 = cycle_weights(w, p) ** 2
    return float(np.dot(e2, np.roll(e2, -1)))


def cross_sum(w: WeightSequence, p: PermClass | Permutation) -> float:
    """The 9-term middle coefficient: Σ over the non-adjacent position pairs."""
    _check_six(w, p)
    e2 = cycle_weights(w, p) ** 2
    return float(np.dot(e2[_CROSS_I], e2[_CROSS_J]))


def odd_product_term(w: WeightSequence, p: PermClass | Permutation) -> float:
    """a_{σ(1)}^2 a_{σ(3)}^2 a_{σ(5)}^2 + a_{σ(2)}^2 a_{σ(4)}^2 a_{σ(6)}^2."""
    _check_six(w, p)
    e2 = cycle_weights(w, p) ** 2
    return float(e2[0] * e2[2] * e2[4] + e2[1] * e2[3] * e2[5])


def reduced_cubic(w: WeightSequence, p: PermClass | Permutation) -> CubicPoly:
    _check_six(w, p)
    a = w.array
    return CubicPoly(
        c2=-float(np.sum(a * a)),
        c1=cross_sum(w, p),
        c0=-odd_product_term(w, p) - 2.0 * float(np.prod(a)),
    )


def alpha_is_zero(alpha, sum_sq):
    return np.abs(alpha) <= ALPHA_ZERO_RTOL * np.square(sum_sq)


# ---------------------------------------------------------------------------
# vectorized forms: a (B, n) weights, idx (K, n) 0-based images -> (B, K)


def perm_index_array(perms: Sequence[PermClass | Permutation]) -> np.ndarray:
    return np.array([p.images for p in perms], dtype=np.intp) - 1


def cycle_weights_batch(a: np.ndarray, idx: np.ndarray) -> np.ndarray:
    """Edge weights of shape (B, K, n)."""
    return np.asarray(a, dtype=float)[:, idx]


def adjacency_sum_batch(a, idx):
    e2 = cycle_weights_batch(a, idx) ** 2
    return np.einsum("bkn,bkn->bk", e2, np.roll(e2, -1, axis=-1))


def cross_sum_batch(a, idx):
    e2 = cycle_weights_batch(a, idx) ** 2
    return np.einsum("bkn,bkn->bk", e2[..., _CROSS_I], e2[..., _CROSS_J])


def odd_product_batch(a, idx):
    e2 = cycle_weights_batch(a, idx) ** 2
    return e2[..., 0] * e2[..., 2] * e2[..., 4] + e2[..., 1] * e2[..., 3] * e2[..., 5]


def reduced_cubic_batch(a, idx):
    """Coefficient arrays (c2, c1, c0), each of shape (B, K)."""
    a = np.asarray(a, dtype=float)
    if a.shape[1] != 6:
        raise DomainError("reduced cubic needs n = 6")
    e2 = cycle_weights_batch(a, idx) ** 2
    c1 = np.einsum("bkn,bkn->bk", e2[..., _CROSS_I], e2[..., _CROSS_J])
    odd = e2[..., 0] * e2[..., 2] * e2[..., 4] + e2[..., 1] * e2[..., 3] * e2[..., 5]
    c2 = np.broadcast_to(-np.sum(a * a, axis=1)[:, None], c1.shape)
    c0 = -odd - 2.0 * np.prod(a, axis=1)[:, None]
    return c2, c1, c0


def non_adjacent_pairs(n: int) -> list[tuple[int, int]]:
    """Position pairs that are not cyclically adjacent (1-indexed)."""
    return [
        (i, j) for i, j in itertools.combinations(range(1, n + 1), 2)
        if j - i != 1 and not (i == 1 and j == n)
    ]
