"""Permutations of {1..n}, the dihedral subgroup H_n and its coset representatives.

Permutations use 1-indexed one-line notation: ``images[k-1]`` is the image of
``k``.  Composition ``p * h`` is ``k -> p(h(k))``, so right-multiplying by an
element of H_n rotates or reverses the one-line word as a cyclic sequence.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DomainError


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise DomainError(f"not a permutation of 1..{len(images)}: {images}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.n != self.n:
            raise DomainError("cannot compose permutations of different sizes")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for k, v in enumerate(self.images, start=1):
            inv[v - 1] = k
        return Permutation(tuple(inv))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse ``"1,5,3,4,2,6"`` (or the digit string ``"153426"`` for n < 10)."""
        text = text.strip().strip("[]")
        if "," in text:
            parts = [s for s in text.replace(" ", "").split(",") if s]
        else:
            parts = list(text.replace(" ", ""))
        try:
            return cls(tuple(int(s) for s in parts))
        except ValueError as exc:
            raise DomainError(f"cannot parse permutation {text!r}") from exc

    def to_json(self) -> list[int]:
        return list(self.images)

    def to_csv(self) -> str:
        return ",".join(str(v) for v in self.images)

    def __str__(self):
        return "[" + ",".join(str(v) for v in self.images) + "]"


def is_normalized(images: Sequence[int]) -> bool:
    return images[0] == 1 and images[1] < images[-1]


@dataclass(frozen=True)
class PermClass:
    """A class of S_n/H_n, held by its normalized representative.

    ``source`` and ``via`` record where the representative came from
    (``rep == source * via``); they take no part in equality or hashing.
    """

    rep: Permutation
    source: Permutation | None = field(default=None, compare=False, repr=False)
    via: Permutation | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.rep.n < 3 or not is_normalized(self.rep.images):
            raise DomainError(f"{self.rep} is not a normalized representative")

    @property
    def n(self) -> int:
        return self.rep.n

    @property
    def images(self) -> tuple[int, ...]:
        return self.rep.images

    def __call__(self, k: int) -> int:
        return self.rep(k)

    @classmethod
    def of(cls, images: Iterable[int] | str) -> "PermClass":
        """Class of an arbitrary permutation, given as images or a string."""
        p = Permutation.parse(images) if isinstance(images, str) else Permutation(tuple(images))
        return canonicalize(p)

    def to_json(self) -> list[int]:
        return self.rep.to_json()

    def to_csv(self) -> str:
        return self.rep.to_csv()

    def __str__(self):
        return str(self.rep)


@dataclass(frozen=True)
class Family:
    """The set {σ(1), σ(3), σ(5)} of a representative of S_6/H_6."""

    odd_set: frozenset[int]

    def __post_init__(self):
        s = frozenset(int(v) for v in self.odd_set)
        object.__setattr__(self, "odd_set", s)
        if len(s) != 3 or 1 not in s or not s <= set(range(1, 7)):
            raise DomainError(f"invalid family {sorted(s)}")

    @classmethod
    def of(cls, *values: int) -> "Family":
        return cls(frozenset(values))

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.odd_set))

    def __str__(self):
        return "{" + ",".join(str(v) for v in self.sorted()) + "}"


# Order in which the ten families are listed (and their minimizers tabulated).
FAMILY_ORDER: tuple[Family, ...] = tuple(
    Family(frozenset((1,) + pair)) for pair in itertools.combinations(range(2, 7), 2)
)


def _check_n(n: int, low: int = 3):
    if not isinstance(n, int) or n < low:
        raise DomainError(f"n must be an integer >= {low}, got {n!r}")


def generators(n: int) -> tuple[Permutation, Permutation]:
    """Return ``(c_n, m_n)``: the cyclic shift k -> k-1 and the reversal k -> n+1-k."""
    _check_n(n)
    c = Permutation((n,) + tuple(range(1, n)))
    m = Permutation(tuple(range(n, 0, -1)))
    return c, m


@lru_cache(maxsize=None)
def h_group(n: int) -> frozenset[Permutation]:
    """All 2n elements of the dihedral group generated by c_n and m_n."""
    _check_n(n)
    c, m = generators(n)
    elements = []
    power = Permutation.identity(n)
    for _ in range(n):
        elements.append(power)
        elements.append(power * m)
        power = power * c
    return frozenset(elements)


def canonicalize(p: Permutation) -> PermClass:
    """Map ``p`` to the normalized member of its coset ``p H_n``.

    Scans all 2n coset members; exactly one has σ(1)=1 and σ(2)<σ(n).
    """
    _check_n(p.n)
    for h in sorted(h_group(p.n), key=lambda h: h.images):
        q = p * h
        if is_normalized(q.images):
            return PermClass(q, source=p, via=h)
    raise AssertionError(f"no normalized member in the coset of {p}")  # unreachable


def canonical_images(images: Sequence[int]) -> tuple[int, ...]:
    """Fast path of :func:`canonicalize` for plain sequences (rotate to 1, orient)."""
    images = tuple(images)
    k = images.index(1)
    rot = images[k:] + images[:k]
    if rot[1] < rot[-1]:
        return rot
    return (1,) + rot[:0:-1]


@lru_cache(maxsize=None)
def _representative_images(n: int) -> tuple[tuple[int, ...], ...]:
    if n <= 8:
        words = (p for p in itertools.permutations(range(1, n + 1)) if is_normalized(p))
    else:
        words = ((1,) + p for p in itertools.permutations(range(2, n + 1)) if p[0] < p[-1])
    return tuple(sorted(words))


def enumerate_representatives(n: int) -> list[PermClass]:
    """All (n-1)!/2 classes of S_n/H_n in lexicographic order of their representatives."""
    _check_n(n)
    return [PermClass(Permutation(w)) for w in _representative_images(n)]


def num_classes(n: int) -> int:
    _check_n(n)
    return math.factorial(n - 1) // 2


def family_of(p: PermClass) -> Family:
    if p.n != 6:
        raise DomainError(f"families are defined for n = 6 only, got n = {p.n}")
    return Family(frozenset((p(1), p(3), p(5))))


def max_permutation(n: int) -> PermClass:
    """Class maximizing the numerical radius for every weight sequence.

    2 sits at position floor(n/2), 1 right after it; even values decrease to the
    left and odd values increase to the right.
    """
    _check_n(n)
    half = n // 2
    images = [0] * n
    images[half - 1] = 2
    images[half] = 1
    for offset, value in enumerate(range(4, n + 1, 2), start=1):
        images[half - 1 - offset] = value
    for offset, value in enumerate(range(3, n + 1, 2), start=1):
        images[half + offset] = value
    return canonicalize(Permutation(tuple(images)))


def max_permutation_word(n: int) -> tuple[int, ...]:
    """One-line word of the maximizer before normalization."""
    return max_permutation(n).source.images


def conjecture_pattern(n: int) -> PermClass:
    """Product of transpositions (2, n-1)(4, n-3)(6, n-5)... while left < right."""
    _check_n(n, 4)
    images = list(range(1, n + 1))
    left, right = 2, n - 1
    while left < right:
        images[left - 1], images[right - 1] = images[right - 1], images[left - 1]
        left, right = left + 2, right - 2
    return canonicalize(Permutation(tuple(images)))
