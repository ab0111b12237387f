import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclomin.errors import DomainError
from cyclomin.perm_group import (
    FAMILY_ORDER,
    Family,
    PermClass,
    Permutation,
    canonical_images,
    canonicalize,
    conjecture_pattern,
    enumerate_representatives,
    family_of,
    generators,
    h_group,
    max_permutation,
    max_permutation_word,
)


def naive_class(images):
    """Normalized word among all rotations and reflections of the cyclic word."""
    n = len(images)
    words = []
    for k in range(n):
        rot = tuple(images[k:] + images[:k])
        words += [rot, rot[::-1]]
    normalized = [w for w in words if w[0] == 1 and w[1] < w[-1]]
    assert len(set(normalized)) == 1
    return normalized[0]


def permutations_of(n):
    return st.permutations(list(range(1, n + 1))).map(lambda p: Permutation(tuple(p)))


def test_generators_n6():
    c, m = generators(6)
    assert c.images == (6, 1, 2, 3, 4, 5)
    assert m.images == (6, 5, 4, 3, 2, 1)
    assert generators(3)[1].images == (3, 2, 1)


def test_cyclic_generator_has_order_n():
    c, _ = generators(4)
    assert (c * c * c * c) == Permutation.identity(4)
    assert (c * c) != Permutation.identity(4)


def test_generators_reject_small_n():
    with pytest.raises(DomainError):
        generators(2)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_h_group_is_dihedral(n):
    h = h_group(n)
    c, m = generators(n)
    assert len(h) == 2 * n
    assert {c, m, Permutation.identity(n)} <= h
    assert m * m == Permutation.identity(n)
    assert all(x * y in h for x in h for y in h)
    assert all(x.inverse() in h for x in h)


def test_h3_is_s3():
    assert len(h_group(3)) == 6 == math.factorial(3)


def test_permutation_validation():
    with pytest.raises(DomainError):
        Permutation((1, 1, 2))
    with pytest.raises(DomainError):
        PermClass(Permutation((1, 6, 3, 4, 2, 5)))  # σ(2) > σ(6)


def test_parse_round_trip():
    p = Permutation.parse("1,5,3,4,2,6")
    assert p == Permutation.parse("[1, 5, 3, 4, 2, 6]") == Permutation.parse("153426")
    assert Permutation.parse(p.to_csv()) == p
    assert Permutation(tuple(p.to_json())) == p


def test_canonicalize_examples():
    assert canonicalize(Permutation.identity(6)).images == (1, 2, 3, 4, 5, 6)
    p = Permutation((1, 6, 3, 4, 2, 5))
    cls = canonicalize(p)
    assert cls.images == naive_class(p.images) == (1, 5, 2, 4, 3, 6)
    assert cls(2) < cls(6)
    assert cls.source * cls.via == cls.rep


def test_canonicalize_constant_on_coset():
    p = Permutation((2, 1, 3, 4, 5, 6))
    target = canonicalize(p)
    assert {canonicalize(p * h) for h in h_group(6)} == {target}


@given(permutations_of(7))
def test_canonicalize_matches_naive_oracle(p):
    cls = canonicalize(p)
    assert cls.images == naive_class(p.images) == canonical_images(p.images)
    assert canonicalize(cls.rep) == cls
    assert canonicalize(cls.rep).images == cls.images


@given(permutations_of(6), st.sampled_from(sorted(h_group(6), key=lambda h: h.images)))
def test_class_invariance_property(p, h):
    assert canonicalize(p * h) == canonicalize(p)


@pytest.mark.parametrize("n, count", [(3, 1), (4, 3), (5, 12), (6, 60), (7, 360)])
def test_enumeration_counts(n, count):
    reps = enumerate_representatives(n)
    assert len(reps) == count == max(1, math.factorial(n - 1) // 2)
    assert len(set(reps)) == count
    assert [r.images for r in reps] == sorted(r.images for r in reps)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_every_permutation_lands_on_one_representative(n):
    reps = {r.images for r in enumerate_representatives(n)}
    hits = {}
    for p in itertools.permutations(range(1, n + 1)):
        hits.setdefault(canonical_images(p), 0)
        hits[canonical_images(p)] += 1
    assert set(hits) == reps
    assert set(hits.values()) == {2 * n}


def test_n8_sampled(rng):
    reps = {r.images for r in enumerate_representatives(8)}
    assert len(reps) == 2520
    for _ in range(500):
        p = Permutation(tuple(int(v) for v in rng.permutation(8) + 1))
        assert canonicalize(p).images in reps


def test_n9_uses_fixed_point_enumeration():
    reps = enumerate_representatives(9)
    assert len(reps) == math.factorial(8) // 2
    assert all(r(1) == 1 and r(2) < r(9) for r in reps[:100])


def test_family_examples():
    assert family_of(PermClass.of((1, 5, 3, 4, 2, 6))) == Family.of(1, 2, 3)
    assert family_of(PermClass.of((1, 2, 3, 4, 5, 6))) == Family.of(1, 3, 5)
    with pytest.raises(DomainError):
        family_of(PermClass.of((1, 3, 2, 4)))


def test_families_partition_reps():
    counts = {}
    for r in enumerate_representatives(6):
        counts[family_of(r)] = counts.get(family_of(r), 0) + 1
    assert set(counts) == set(FAMILY_ORDER)
    assert set(counts.values()) == {6}
    assert [f.sorted() for f in FAMILY_ORDER[:2]] == [(1, 2, 3), (1, 2, 4)]
    assert FAMILY_ORDER[-1].sorted() == (1, 5, 6)


def test_family_validation():
    with pytest.raises(DomainError):
        Family.of(2, 3, 4)


def test_max_permutation_words():
    assert max_permutation_word(6) == (6, 4, 2, 1, 3, 5)
    assert max_permutation_word(5) == (4, 2, 1, 3, 5)
    assert max_permutation_word(4) == (4, 2, 1, 3)
    assert max_permutation_word(7) == (6, 4, 2, 1, 3, 5, 7)
    for n in range(3, 9):
        cls = max_permutation(n)
        assert cls(1) == 1 and cls(2) < cls(n)


def test_conjecture_patterns():
    assert conjecture_pattern(6).images == (1, 5, 3, 4, 2, 6)
    assert conjecture_pattern(8).images == (1, 7, 3, 5, 4, 6, 2, 8)
    assert conjecture_pattern(4).images == (1, 3, 2, 4)
    assert conjecture_pattern(5).images == (1, 4, 3, 2, 5)
    assert conjecture_pattern(7).images == (1, 6, 3, 4, 5, 2, 7)
