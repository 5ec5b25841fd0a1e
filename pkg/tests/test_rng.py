import numpy as np

from temo.rng import RngStream


def test_same_path_same_draws():
    a = RngStream(42).split(3).generator().random(16)
    b = RngStream(42).split(3).generator().random(16)
    assert np.array_equal(a, b)


def test_sibling_streams_differ():
    a = RngStream(42).split(0).generator().random(16)
    b = RngStream(42).split(1).generator().random(16)
    assert not np.array_equal(a, b)


def test_nested_paths():
    s = RngStream(7).split(1).split(2)
    assert s.path == (1, 2)
    assert np.array_equal(s.generator().random(4), RngStream(7, (1, 2)).generator().random(4))


def test_seed_changes_draws():
    a = RngStream(1).generator().random(8)
    b = RngStream(2).generator().random(8)
    assert not np.array_equal(a, b)
