import numpy as np
import pytest

from temo.directions import DirectionSet, das_dennis, neighbors


def test_das_dennis_m2_h4_enumeration():
    W = das_dennis(2, 4).W
    expected = [[0, 1], [0.25, 0.75], [0.5, 0.5], [0.75, 0.25], [1, 0]]
    assert W.tolist() == expected


def test_das_dennis_counts():
    assert das_dennis(3, 12).count == 91
    assert das_dennis(3, 13).count == 105


def test_das_dennis_rows_sum_to_one_exactly():
    for m, H in ((2, 4), (3, 12), (3, 13), (4, 7), (5, 5)):
        W = das_dennis(m, H).W
        assert np.all(W.sum(axis=1) == 1.0)


def test_das_dennis_overflow_guard():
    with pytest.raises(ValueError):
        das_dennis(10, 100)


def test_direction_set_rejects_bad_rows():
    with pytest.raises(ValueError):
        DirectionSet(np.array([[0.0, 0.0], [1.0, 0.0]]), "simplex")
    with pytest.raises(ValueError):
        DirectionSet(np.array([[1.0, 0.0], [1.0, 0.0]]), "simplex")


def test_neighbors_t1_is_self():
    table = neighbors(das_dennis(3, 5), 1)
    assert table.I_nb[:, 0].tolist() == list(range(table.I_nb.shape[0]))


def test_neighbors_tie_broken_by_index():
    table = neighbors(das_dennis(2, 4), 2)
    # the middle row (.5,.5) is equidistant to rows 1 and 3; 1 wins
    assert table.I_nb[2].tolist() == [2, 1]


def test_neighbors_match_exhaustive_sort():
    rng = np.random.default_rng(21)
    W = rng.random((12, 3)) + 0.05
    ds = DirectionSet(W, "simplex")
    T = 5
    table = neighbors(ds, T)
    for i in range(12):
        d = [float(np.linalg.norm(W[i] - W[j])) for j in range(12)]
        expected = sorted(range(12), key=lambda j: (d[j], j))[:T]
        assert table.I_nb[i].tolist() == expected


def test_neighbor_distance_symmetry():
    rng = np.random.default_rng(22)
    W = rng.random((9, 4)) + 0.05
    diff = W[:, None, :] - W[None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=-1))
    assert np.array_equal(dist, dist.T)


def test_neighbors_range_check():
    ds = das_dennis(2, 3)
    with pytest.raises(ValueError):
        neighbors(ds, 0)
    with pytest.raises(ValueError):
        neighbors(ds, ds.count + 1)


def test_unit_norm_rows():
    ds = das_dennis(3, 6).unit_norm()
    assert np.allclose(np.linalg.norm(ds.W, axis=1), 1.0, atol=1e-12)
