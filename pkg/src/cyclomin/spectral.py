"""Numerical radius of weighted cyclic matrices.

For nonnegative weights the numerical radius of A_σ is the Perron root of its
real part, so 2 w(A_σ) is the largest eigenvalue of the symmetric weighted
cycle A_σ + A_σ^T.  Two independent routes compute it:

* ``radius_closed_form`` (n = 6): largest root t of the reduced cubic, w = sqrt(t)/2;
* ``radius_power_iteration`` (any n): shifted power iteration on the cycle.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .cyclic_matrix import (
    CubicPoly,
    WeightSequence,
    cycle_weights,
    cycle_weights_batch,
    reduced_cubic,
    reduced_cubic_batch,
)
from .errors import DomainError, IterationError
from .perm_group import PermClass, Permutation

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 100_000


class Method(str, enum.Enum):
    CLOSED_FORM_CUBIC = "ClosedFormCubic"
    POWER_ITERATION = "PowerIteration"


@dataclass(frozen=True)
class RadiusResult:
    w: float
    t: float
    method: Method
    iterations: int
    residual: float
    vector: tuple[float, ...] | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        d = {
            "w": self.w,
            "t": self.t,
            "method": self.method.value,
            "iterations": self.iterations,
            "residual": self.residual,
        }
        if self.vector is not None:
            d["vector"] = list(self.vector)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "RadiusResult":
        vec = d.get("vector")
        return cls(
            w=float(d["w"]), t=float(d["t"]), method=Method(d["method"]),
            iterations=int(d["iterations"]), residual=float(d["residual"]),
            vector=None if vec is None else tuple(vec),
        )


@dataclass(frozen=True)
class GershBounds:
    """Extreme cyclic adjacent weight sums; g/2 <= w(A_σ) <= G/2."""

    g: float
    G: float

    @property
    def g2(self) -> float:
        return self.g * self.g

    @property
    def G2(self) -> float:
        return self.G * self.G

    def to_json(self) -> dict:
        return {"g": self.g, "G": self.G, "g2": self.g2, "G2": self.G2}


# ---------------------------------------------------------------------------
# cubic


def largest_cubic_root(c2, c1=None, c0=None):
    """Largest real root of x^3 + c2 x^2 + c1 x + c0 by the trigonometric method.

    Accepts a :class:`CubicPoly` or three coefficient arrays (broadcast
    together).  Raises DomainError if any cubic has a complex pair of roots.
    """
    if isinstance(c2, CubicPoly):
        c2, c1, c0 = c2.c2, c2.c1, c2.c0
        scalar = True
    else:
        scalar = np.ndim(c2) == 0 and np.ndim(c1) == 0 and np.ndim(c0) == 0
    c2, c1, c0 = np.broadcast_arrays(*(np.asarray(c, dtype=float) for c in (c2, c1, c0)))

    # work in units where the coefficients are O(1)
    s = np.maximum.reduce([np.abs(c2), np.sqrt(np.abs(c1)), np.cbrt(np.abs(c0))])
    s = np.where(s > 1e-100, s, 1.0)
    b2, b1, b0 = c2 / s, c1 / s**2, c0 / s**3

    shift = -b2 / 3.0
    p = b1 - b2 * b2 / 3.0
    q = 2.0 * b2**3 / 27.0 - b2 * b1 / 3.0 + b0
    disc = 4.0 * p**3 + 27.0 * q**2
    if np.any(disc > 1e-12):
        raise DomainError("cubic has complex roots; not a reduced characteristic cubic")

    neg = p < -1e-14
    p_safe = np.where(neg, p, -1.0)
    arg = np.where(neg, 1.5 * q / p_safe * np.sqrt(-3.0 / p_safe), 0.0)
    arg = np.clip(arg, -1.0, 1.0)
    y = np.where(neg, 2.0 * np.sqrt(-p_safe / 3.0) * np.cos(np.arccos(arg) / 3.0), np.cbrt(-q))
    x = y + shift

    # one Newton step where the root is simple enough for it to help
    f = ((x + b2) * x + b1) * x + b0
    df = (3.0 * x + 2.0 * b2) * x + b1
    ok = np.abs(df) > 1e-6
    x = np.where(ok, x - f / np.where(ok, df, 1.0), x)

    root = x * s
    return float(root) if scalar else root


def critical_points(q: CubicPoly) -> tuple[float, float]:
    """Roots (x_m, x_M) of the derivative; requires a positive discriminant."""
    disc = q.c2 * q.c2 - 3.0 * q.c1
    if disc < 0:
        raise DomainError("derivative has no real roots")
    r = np.sqrt(disc)
    return (-q.c2 - r) / 3.0, (-q.c2 + r) / 3.0


# ---------------------------------------------------------------------------
# power iteration on the weighted cycle


def _cycle_apply(e, v):
    # (M v)_i = e_{i-1} v_{i-1} + e_i v_{i+1}
    return np.roll(e, 1, axis=-1) * np.roll(v, 1, axis=-1) + e * np.roll(v, -1, axis=-1)


def gershgorin_radius(e):
    """Largest absolute row sum of the weighted cycle with edge weights ``e``."""
    return np.max(e + np.roll(e, 1, axis=-1), axis=-1)


def perron_iteration(edges, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER, check_every=8):
    """Shifted power iteration for the Perron root of weighted cycles.

    ``edges`` has shape (..., n).  Iterates on M + G I (G the Gershgorin
    radius, so the spectrum is shifted into [0, 2G] and -λ_max cannot
    compete) from the all-ones vector.  Converged when the ∞-norm residual of
    the ∞-normalized vector is at most ``tol * max(1, G)``.

    Returns ``(lam, vec, iterations, residual)`` with leading shape of edges.
    """
    e = np.asarray(edges, dtype=float)
    lead = e.shape[:-1]
    n = e.shape[-1]
    e = e.reshape(-1, n)
    m = e.shape[0]
    G = gershgorin_radius(e)
    thresh = tol * np.maximum(1.0, G)

    lam = np.zeros(m)
    res = np.full(m, np.inf)
    iters = np.zeros(m, dtype=np.int64)
    vec = np.ones((m, n))
    active = np.arange(m)
    v = vec.copy()
    ea, Ga = e, G[:, None]
    it = 0
    while active.size and it < max_iter:
        for _ in range(check_every):
            v = _cycle_apply(ea, v) + Ga * v
            v /= np.max(v, axis=1, keepdims=True)
        it += check_every
        mv = _cycle_apply(ea, v)
        l = np.einsum("ij,ij->i", v, mv) / np.einsum("ij,ij->i", v, v)
        r = np.max(np.abs(mv - l[:, None] * v), axis=1)
        lam[active], res[active], iters[active] = l, r, it
        vec[active] = v
        done = r <= thresh[active]
        if done.any():
            keep = ~done
            active, v, ea, Ga = active[keep], v[keep], ea[keep], Ga[keep]
    if active.size:
        worst = int(active[np.argmax(res[active])])
        raise IterationError(
            f"power iteration did not converge in {max_iter} iterations "
            f"({active.size} unconverged, worst residual {res[worst]:.3e})",
            residual=float(res[worst]),
            iterations=int(it),
        )
    return lam.reshape(lead), vec.reshape(lead + (n,)), iters.reshape(lead), res.reshape(lead)


def perron_bounds(edges, steps=16):
    """Lower and upper bounds on the Perron root after a few shifted power steps.

    Lower: Rayleigh quotient of the iterate.  Upper: Collatz-Wielandt bound
    max_i (M v)_i / v_i, valid for any positive v.
    """
    e = np.asarray(edges, dtype=float)
    G = gershgorin_radius(e)[..., None]
    e_prev = np.roll(e, 1, axis=-1)
    v = np.ones_like(e)
    for k in range(steps):
        # entries grow by at most 2G per step; renormalize every fourth step
        v = e_prev * np.roll(v, 1, axis=-1) + e * np.roll(v, -1, axis=-1) + G * v
        if k % 4 == 3:
            v /= np.max(v, axis=-1, keepdims=True)
    mv = e_prev * np.roll(v, 1, axis=-1) + e * np.roll(v, -1, axis=-1)
    lower = np.sum(v * mv, axis=-1) / np.sum(v * v, axis=-1)
    upper = np.max(mv / v, axis=-1)
    return lower, upper


def cycle_eigvalsh_max(edges):
    """Largest eigenvalue of each weighted cycle via a dense symmetric solver."""
    e = np.asarray(edges, dtype=float)
    n = e.shape[-1]
    m = np.zeros(e.shape + (n,))
    i = np.arange(n)
    m[..., i, (i + 1) % n] += e
    m[..., (i + 1) % n, i] += e
    return np.linalg.eigvalsh(m)[..., -1]


# ---------------------------------------------------------------------------
# public radius operations


def gersh_bounds(w: WeightSequence, p: PermClass | Permutation) -> GershBounds:
    e = cycle_weights(w, p)
    sums = e + np.roll(e, -1)
    return GershBounds(g=float(np.min(sums)), G=float(np.max(sums)))


def radius_closed_form(w: WeightSequence, p: PermClass | Permutation) -> RadiusResult:
    q = reduced_cubic(w, p)
    t = max(largest_cubic_root(q), 0.0)
    return RadiusResult(
        w=float(np.sqrt(t) / 2.0),
        t=float(t),
        method=Method.CLOSED_FORM_CUBIC,
        iterations=0,
        residual=float(abs(q(t))),
    )


def radius_power_iteration(
    w: WeightSequence,
    p: PermClass | Permutation,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> RadiusResult:
    if tol <= 0:
        raise DomainError("tol must be positive")
    e = cycle_weights(w, p)
    lam, vec, iters, res = perron_iteration(e[None, :], tol=tol, max_iter=max_iter)
    lam = float(lam[0])
    return RadiusResult(
        w=lam / 2.0,
        t=lam * lam,
        method=Method.POWER_ITERATION,
        iterations=int(iters[0]),
        residual=float(res[0]),
        vector=tuple(float(x) for x in vec[0]),
    )


def radius(w: WeightSequence, p: PermClass | Permutation) -> RadiusResult:
    """Closed form for n = 6, power iteration otherwise."""
    if w.n == 6:
        return radius_closed_form(w, p)
    return radius_power_iteration(w, p)


# ---------------------------------------------------------------------------
# batch evaluation over many weight sequences and classes


def radii_closed_form_batch(a, idx):
    """Radii of shape (B, K) for n = 6."""
    c2, c1, c0 = reduced_cubic_batch(a, idx)
    t = np.maximum(largest_cubic_root(c2, c1, c0), 0.0)
    return np.sqrt(t) / 2.0


def radii_power_batch(a, idx, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    lam, _, _, _ = perron_iteration(cycle_weights_batch(a, idx), tol=tol, max_iter=max_iter)
    return lam / 2.0


def two_smallest_radii(a, idx, margin=1e-9, bound_steps=16):
    """For each weight row: index of the smallest radius, that radius, and the next one.

    n = 6 uses the closed form on every class.  Otherwise classes are first
    bracketed with :func:`perron_bounds`; only those whose lower bound is
    within ``margin`` (relative) of the best upper bound are solved exactly,
    with a dense symmetric eigensolver.  When every other class was pruned the returned second value is
    a lower bound, which still exceeds the minimum by more than ``margin``.
    """
    a = np.asarray(a, dtype=float)
    if a.shape[1] == 6:
        w = radii_closed_form_batch(a, idx)
    else:
        e = cycle_weights_batch(a, idx)
        lower, upper = perron_bounds(e, steps=bound_steps)
        best_upper = np.min(upper, axis=1, keepdims=True)
        survive = lower <= best_upper * (1.0 + margin)
        bi, ki = np.nonzero(survive)
        lam = cycle_eigvalsh_max(e[bi, ki])
        full = lower.copy()
        full[bi, ki] = lam
        w = full / 2.0
    order = np.argsort(w, axis=1, kind="stable")[:, :2]
    rows = np.arange(w.shape[0])
    return order[:, 0], w[rows, order[:, 0]], w[rows, order[:, 1]], order[:, 1]
