import itertools

import numpy as np
import pytest
from hypothesis import given

from conftest import random_weights, weight_sequences
from cyclomin.cyclic_matrix import (
    CROSS_PAIRS,
    CubicPoly,
    WeightSequence,
    adjacency_sum,
    adjacency_sum_batch,
    build_matrix,
    cross_sum,
    cross_sum_batch,
    increments,
    non_adjacent_pairs,
    odd_product_batch,
    odd_product_term,
    perm_index_array,
    real_part_doubled,
    reduced_cubic,
    reduced_cubic_batch,
)
from cyclomin.errors import DomainError, NegativeWeightError, NonIncreasingWeightsError
from cyclomin.perm_group import PermClass, conjecture_pattern, enumerate_representatives, h_group
from cyclomin.spectral import radius_power_iteration

W6 = WeightSequence((1, 2, 3, 4, 5, 6))
BLOCK1 = WeightSequence((1, 1.3, 1.7, 6.3, 6.8, 7.1))
REPS6 = enumerate_representatives(6)


def test_validation():
    WeightSequence((0, 1, 2))
    with pytest.raises(NegativeWeightError):
        WeightSequence((-1, 1, 2))
    with pytest.raises(NonIncreasingWeightsError):
        WeightSequence((1, 1, 2))
    with pytest.raises(NonIncreasingWeightsError):
        WeightSequence((1, 3, 2))
    with pytest.raises(DomainError):
        WeightSequence((1, 2))
    assert WeightSequence.parse("1,1.3,1.7").a == (1.0, 1.3, 1.7)


def test_increments():
    assert increments(WeightSequence((0, 1, 2))).r == (0.0, 1.0, 3.0)
    r = increments(BLOCK1).r
    assert r[0] == pytest.approx(1.0)
    assert r[1] == pytest.approx(0.69)


def test_increments_prefix_sums(rng):
    for row in random_weights(rng, 1000):
        w = WeightSequence(tuple(row))
        inc = increments(w)
        assert inc.r[0] >= 0 and min(inc.r[1:]) > 0
        np.testing.assert_allclose(inc.prefix_sums(), w.array ** 2, rtol=1e-12)


def test_build_matrix_layout():
    m = build_matrix(WeightSequence((1, 2, 3)), PermClass.of((1, 2, 3))).entries
    np.testing.assert_array_equal(m, [[0, 1, 0], [0, 0, 2], [3, 0, 0]])
    a = np.array([1.0, 2.5, 3.0, 4.5, 5.0, 6.5])
    w = WeightSequence(tuple(a))
    m = build_matrix(w, PermClass.of((1, 5, 3, 4, 2, 6))).entries
    np.testing.assert_array_equal(np.diag(m, 1), a[[0, 4, 2, 3, 1]])
    assert m[5, 0] == a[5]
    assert np.count_nonzero(m) == 6


def test_frobenius_norm_is_permutation_invariant(rng):
    a = random_weights(rng, 1)[0]
    w = WeightSequence(tuple(a))
    for p in REPS6:
        assert np.sum(build_matrix(w, p).entries ** 2) == pytest.approx(np.sum(a ** 2), rel=1e-14)


def test_real_part_doubled():
    w = WeightSequence((0.5, 1, 2, 3.5, 4, 7))
    p = PermClass.of((1, 4, 6, 2, 5, 3))
    s = real_part_doubled(build_matrix(w, p))
    np.testing.assert_array_equal(s, s.T)
    assert (s >= 0).all() and not np.diag(s).any()
    e = [w.a[k - 1] for k in p.images]
    for i in range(6):
        assert s[i].sum() == pytest.approx(e[i - 1] + e[i])
    assert s[0, 5] == s[5, 0] == e[5]
    ev = np.linalg.eigvalsh(s)
    np.testing.assert_allclose(np.sort(ev), np.sort(-ev), atol=1e-12)


def test_adjacency_sum_direct():
    # 4 + 36 + 144 + 400 + 900 + 36
    assert adjacency_sum(W6, PermClass.of((1, 2, 3, 4, 5, 6))) == 1520


def test_odd_product_direct():
    # σ(1),σ(3),σ(5) = 1,3,2 -> 1*9*4; σ(2),σ(4),σ(6) = 5,4,6 -> 25*16*36
    assert odd_product_term(W6, PermClass.of((1, 5, 3, 4, 2, 6))) == 36 + 14400


def test_cross_pairs_cover_non_adjacent_pairs():
    assert len(CROSS_PAIRS) == 9
    assert len(CROSS_PAIRS) + 6 == 15
    assert sorted(CROSS_PAIRS) == non_adjacent_pairs(6)


@given(weight_sequences())
def test_square_sum_identity(w):
    a2 = w.array ** 2
    p = PermClass.of((1, 4, 2, 6, 3, 5))
    lhs = 2 * (cross_sum(w, p) + adjacency_sum(w, p))
    rhs = a2.sum() ** 2 - np.sum(a2 ** 2)
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_square_sum_identity_random(rng):
    a = random_weights(rng, 1000)
    idx = perm_index_array(REPS6)
    lhs = 2 * (cross_sum_batch(a, idx) + adjacency_sum_batch(a, idx))
    a2 = a ** 2
    rhs = (a2.sum(1) ** 2 - (a2 ** 2).sum(1))[:, None]
    np.testing.assert_allclose(lhs, np.broadcast_to(rhs, lhs.shape), rtol=1e-10)


def test_coefficients_invariant_under_h6(rng):
    w = WeightSequence(tuple(random_weights(rng, 1)[0]))
    for p in REPS6[::7]:
        ref = [adjacency_sum(w, p), cross_sum(w, p), odd_product_term(w, p), *reduced_cubic(w, p).to_json().values()]
        for h in h_group(6):
            q = p.rep * h
            got = [adjacency_sum(w, q), cross_sum(w, q), odd_product_term(w, q), *reduced_cubic(w, q).to_json().values()]
            # same multiset of products, only the summation order differs
            assert got == pytest.approx(ref, rel=1e-14)


def test_elimination_alpha_factorization(rng):
    s, m = PermClass.of((1, 4, 5, 2, 3, 6)), PermClass.of((1, 4, 6, 3, 2, 5))
    for row in random_weights(rng, 200):
        w = WeightSequence(tuple(row))
        a = np.concatenate([[0.0], row ** 2])
        assert cross_sum(w, s) - cross_sum(w, m) == pytest.approx((a[1] - a[4]) * (a[5] - a[6]), rel=1e-9)


def test_same_family_coefficient_equivalence(rng):
    """Within a family, larger cross sum <=> smaller adjacency sum."""
    from cyclomin.perm_group import family_of
    a = random_weights(rng, 200)
    for row in a:
        w = WeightSequence(tuple(row))
        for p, q in itertools.combinations(REPS6, 2):
            if family_of(p) != family_of(q):
                continue
            dc = cross_sum(w, p) - cross_sum(w, q)
            da = adjacency_sum(w, p) - adjacency_sum(w, q)
            assert np.sign(dc) == -np.sign(da) or abs(dc) < 1e-9


def test_reduced_cubic_matches_characteristic_polynomial(rng):
    """Coefficients against numpy's characteristic polynomial of A + A^T."""
    for row in random_weights(rng, 50):
        w = WeightSequence(tuple(row))
        for p in REPS6[::11]:
            q = reduced_cubic(w, p)
            char = np.poly(real_part_doubled(build_matrix(w, p)))
            scale = np.sum(row ** 2) ** 3
            np.testing.assert_allclose(char[[2, 4, 6]], [q.c2, q.c1, q.c0], atol=1e-11 * scale)
            np.testing.assert_allclose(char[[1, 3, 5]], 0, atol=1e-11 * scale)


def test_reduced_cubic_vanishes_at_radius():
    for p in REPS6:
        q = reduced_cubic(BLOCK1, p)
        t = (2 * radius_power_iteration(BLOCK1, p).w) ** 2
        assert abs(q(t)) <= 1e-8 * max(1, abs(q.c0))


def test_reduced_cubic_difference_gives_beta():
    s, m = REPS6[3], REPS6[40]
    diff = reduced_cubic(BLOCK1, s).c0 - reduced_cubic(BLOCK1, m).c0
    assert diff == pytest.approx(-odd_product_term(BLOCK1, s) + odd_product_term(BLOCK1, m))
    assert reduced_cubic(BLOCK1, s).c2 == reduced_cubic(BLOCK1, m).c2 == -np.sum(BLOCK1.array ** 2)


def test_batch_matches_scalar(rng):
    a = random_weights(rng, 20)
    idx = perm_index_array(REPS6)
    c2, c1, c0 = reduced_cubic_batch(a, idx)
    odd = odd_product_batch(a, idx)
    for b in range(0, 20, 5):
        w = WeightSequence(tuple(a[b]))
        for k in range(0, 60, 13):
            q = reduced_cubic(w, REPS6[k])
            assert (c2[b, k], c1[b, k], c0[b, k]) == pytest.approx((q.c2, q.c1, q.c0), rel=1e-14)
            assert odd[b, k] == pytest.approx(odd_product_term(w, REPS6[k]), rel=1e-14)


def test_six_only_operations():
    w7 = WeightSequence(tuple(range(1, 8)))
    p7 = conjecture_pattern(7)
    for fn in (cross_sum, odd_product_term, reduced_cubic):
        with pytest.raises(DomainError):
            fn(w7, p7)
    adjacency_sum(w7, p7)
    with pytest.raises(DomainError):
        adjacency_sum(W6, p7)


def test_cubic_json_round_trip():
    q = reduced_cubic(BLOCK1, REPS6[0])
    assert CubicPoly.from_json(q.to_json()) == q
