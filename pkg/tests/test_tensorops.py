import numpy as np
import pytest

from temo.tensorops import argsort_stable, batched_map, heaviside, lexsort, masked_blend


def test_heaviside_basic():
    assert heaviside(np.array([-1.0, 0.0, 2.0])).tolist() == [0, 1, 1]
    assert heaviside(np.zeros((3, 3))).tolist() == np.ones((3, 3)).tolist()


def test_heaviside_matches_scalar_loop():
    rng = np.random.default_rng(7)
    A = rng.normal(size=(4, 4))
    H = heaviside(A)
    for i in range(4):
        for j in range(4):
            assert H[i, j] == (1 if A[i, j] >= 0 else 0)


def test_heaviside_complement_identity():
    rng = np.random.default_rng(8)
    A = rng.normal(size=200)
    A[::7] = 0.0
    total = heaviside(A) + heaviside(-A)
    assert np.all(total >= 1)
    assert np.array_equal(total == 2, A == 0)


def test_masked_blend_identities():
    A = np.arange(6.0).reshape(2, 3)
    B = -A
    assert np.array_equal(masked_blend(np.ones_like(A), A, B), A)
    assert np.array_equal(masked_blend(np.zeros_like(A), A, B), B)
    out = masked_blend(np.array([1, 0]), np.array([5.0, 5.0]), np.array([7.0, 7.0]))
    assert out.tolist() == [5.0, 7.0]


def test_masked_blend_equals_branch_semantics():
    rng = np.random.default_rng(9)
    for _ in range(50):
        M = rng.integers(0, 2, size=(5, 4))
        A = rng.normal(size=(5, 4))
        B = rng.normal(size=(5, 4))
        got = masked_blend(M, A, B)
        for i in range(5):
            for j in range(4):
                assert got[i, j] == (A[i, j] if M[i, j] else B[i, j])


def test_masked_blend_rejects_non_binary():
    with pytest.raises(ValueError):
        masked_blend(np.array([0, 2]), np.zeros(2), np.zeros(2))


def test_batched_map_identity_and_rowsum():
    A = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert np.array_equal(batched_map(lambda r: r, A), A)
    assert batched_map(np.sum, A).tolist() == [3.0, 7.0]


def test_batched_map_equals_sequential_loop():
    rng = np.random.default_rng(10)
    family = [np.sort, np.cumsum, lambda r: r**2, lambda r: r[::-1], np.tanh]
    for trial in range(100):
        fn = family[trial % len(family)]
        A = rng.normal(size=(rng.integers(1, 6), rng.integers(1, 5)))
        expected = np.stack([fn(A[i]) for i in range(A.shape[0])])
        assert np.array_equal(batched_map(fn, A), expected)


def test_batched_map_rejects_inconsistent_shapes():
    A = np.array([[1.0, 0.0], [2.0, 3.0]])
    with pytest.raises(ValueError):
        batched_map(lambda r: np.ones(int(r[0])), A)


def test_argsort_stable_examples():
    assert argsort_stable(np.array([3, 1, 2])).tolist() == [1, 2, 0]
    assert argsort_stable(np.array([5, 5, 5])).tolist() == [0, 1, 2]


def test_argsort_stable_matches_reference_sort():
    rng = np.random.default_rng(11)
    for _ in range(50):
        v = rng.integers(0, 5, size=20).astype(float)
        expected = sorted(range(20), key=lambda i: (v[i], i))
        assert argsort_stable(v).tolist() == expected


def test_argsort_is_permutation():
    rng = np.random.default_rng(12)
    for _ in range(20):
        v = rng.normal(size=17)
        idx = argsort_stable(v)
        assert sorted(idx.tolist()) == list(range(17))


def test_lexsort_examples():
    got = lexsort(np.array([0, 0, 1]), np.array([2, 1, 0]))
    assert got.tolist() == [1, 0, 2]
    const = lexsort(np.zeros(4), np.array([3.0, 1.0, 2.0, 0.0]))
    assert const.tolist() == argsort_stable(np.array([3.0, 1.0, 2.0, 0.0])).tolist()


def test_lexsort_matches_comparison_sort():
    rng = np.random.default_rng(13)
    for _ in range(50):
        p = rng.integers(0, 4, size=15).astype(float)
        s = rng.integers(0, 4, size=15).astype(float)
        expected = sorted(range(15), key=lambda i: (p[i], s[i], i))
        assert lexsort(p, s).tolist() == expected


def test_lexsort_rejects_mismatched_lengths():
    with pytest.raises(ValueError):
        lexsort(np.zeros(3), np.zeros(4))
