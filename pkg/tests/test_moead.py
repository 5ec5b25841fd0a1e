import numpy as np
import pytest

from oracles import ForcedRng
from temo.directions import das_dennis, neighbors
from temo.moead import (
    MoeadState,
    compare_update,
    default_neighborhood,
    elite_select,
    init_state,
    moead_offspring,
    pbi,
    step,
)
from temo.problems import evaluate, make_problem
from temo.variation import VariationParams


def small_state(n=6, m=2, T=3, seed=0, theta=5.0):
    rng = np.random.default_rng(seed)
    W = das_dennis(m, n - 1).W[:n]
    ds = das_dennis(m, n - 1)
    table = neighbors(ds, T)
    X = rng.random((n, 4))
    F = rng.random((n, m))
    return init_state(X, F, ds.W, table, theta)


def test_pbi_zero_at_ideal():
    z = np.array([0.5, 0.5])
    for w in (np.array([1.0, 0.0]), np.array([0.3, 0.7])):
        assert pbi(z, w, z, theta=7.0) == 0.0


def test_pbi_collinear():
    z = np.zeros(2)
    w = np.array([3.0, 4.0])
    f = 2.0 * w / np.linalg.norm(w)
    assert np.isclose(pbi(f, w, z, theta=5.0), 2.0)


def test_pbi_hand_computed():
    z = np.zeros(2)
    f = np.array([1.0, 1.0])
    w = np.array([1.0, 0.0])
    assert np.isclose(pbi(f, w, z, theta=5.0), 6.0)


def test_pbi_rejects_zero_weight():
    with pytest.raises(ValueError):
        pbi(np.ones(2), np.zeros(2), np.zeros(2), theta=5.0)


def test_pbi_unnormalized_variant():
    z = np.zeros(2)
    f = np.array([1.0, 1.0])
    w = np.array([2.0, 0.0])
    d1 = 1.0  # |f.w|/||w|| = 2/2
    resid = f - d1 * w  # literal form: no direction normalization
    expected = d1 + 5.0 * np.linalg.norm(resid)
    assert np.isclose(pbi(f, w, z, 5.0, normalize_direction=False), expected)


def test_compare_update_no_improvement():
    st = small_state(seed=1)
    F2 = st.F1 + 10.0  # strictly worse everywhere
    update, z_min = compare_update(st, F2)
    assert np.all(update.I_new >= 0)
    assert np.array_equal(z_min, st.z)


def test_compare_update_ideal_offspring_sweeps_neighborhood():
    st = small_state(seed=2)
    F2 = st.F1 + 10.0
    F2[3] = st.z - 1.0  # offspring 3 lands on the (new) ideal point
    update, z_min = compare_update(st, F2)
    row = update.I_new[3]
    assert np.all(row[st.I_nb[3]] == -1)
    outside = np.setdiff1d(np.arange(st.F1.shape[0]), st.I_nb[3])
    assert np.all(row[outside] == outside)


def test_compare_update_matches_sequential_loop():
    rng = np.random.default_rng(83)
    for trial in range(30):
        st = small_state(n=4, m=2, T=2, seed=trial)
        F2 = rng.random((4, 2))
        update, z_min = compare_update(st, F2)
        want_z = np.minimum(st.z, F2.min(axis=0))
        assert np.array_equal(z_min, want_z)
        for i in range(4):
            expected = np.arange(4)
            for j in st.I_nb[i]:
                g_old = pbi(st.F1[j], st.W[j], z_min, st.theta)
                g_new = pbi(F2[i], st.W[j], z_min, st.theta)
                if g_old - g_new >= 0:
                    expected[j] = -1
            assert np.array_equal(update.I_new[i], expected)


def test_elite_select_identity_when_no_updates():
    st = small_state(seed=3)
    F2 = st.F1 + 10.0
    update, z_min = compare_update(st, F2)
    X_next, F_next = elite_select(st, st.X + 99.0, F2, update, z_min)
    assert np.array_equal(X_next, st.X)
    assert np.array_equal(F_next, st.F1)


def test_elite_select_single_dominator_takes_all():
    st = small_state(n=3, m=2, T=2, seed=4)
    O = st.X + 1.0
    F2 = st.F1 + 10.0
    F2[1] = st.z - 0.5
    update, z_min = compare_update(st, F2)
    X_next, F_next = elite_select(st, O, F2, update, z_min)
    for j in st.I_nb[1]:
        assert np.array_equal(F_next[j], F2[1])
        assert np.array_equal(X_next[j], O[1])


def test_elite_select_never_worse_per_direction():
    rng = np.random.default_rng(84)
    for trial in range(30):
        st = small_state(n=6, m=2, T=3, seed=100 + trial)
        F2 = rng.random((6, 2))
        O = rng.random((6, 4))
        update, z_min = compare_update(st, F2)
        _, F_next = elite_select(st, O, F2, update, z_min)
        for j in range(6):
            new = pbi(F_next[j], st.W[j], z_min, st.theta)
            old = pbi(st.F1[j], st.W[j], z_min, st.theta)
            assert new <= old + 1e-12


def test_elite_select_column_independence():
    rng = np.random.default_rng(85)
    st = small_state(n=6, m=2, T=3, seed=9)
    F2 = rng.random((6, 2))
    O = rng.random((6, 4))
    update, z_min = compare_update(st, F2)
    X_next, F_next = elite_select(st, O, F2, update, z_min)
    for j in range(6):
        scores = [
            pbi(F2[i], st.W[j], z_min, st.theta)
            if update.I_new[i, j] == -1
            else pbi(st.F1[j], st.W[j], z_min, st.theta)
            for i in range(6)
        ]
        win = int(np.argmin(scores))
        expect_f = F2[win] if update.I_new[win, j] == -1 else st.F1[j]
        assert np.array_equal(F_next[j], expect_f)


def test_moead_offspring_requires_t2():
    st = small_state(seed=5)
    st = MoeadState(st.X, st.F1, st.z, st.W, st.I_nb[:, :1], st.theta)
    params = VariationParams(lower=np.zeros(4), upper=np.ones(4))
    with pytest.raises(ValueError):
        moead_offspring(st, np.random.default_rng(0), params, lambda X: X[:, :2])


def test_moead_offspring_bounds_and_forced_identity():
    st = small_state(seed=6)
    params = VariationParams(lower=np.zeros(4), upper=np.ones(4))
    O, F2 = moead_offspring(st, np.random.default_rng(11), params, lambda X: X[:, :2])
    assert np.all(O >= 0.0) and np.all(O <= 1.0)
    # forced draws: every uniform is 0.5, every integer pick is the lowest
    O2, F22 = moead_offspring(st, ForcedRng(0.5), params, lambda X: X[:, :2])
    first_parents = st.X[st.I_nb[:, 0]]
    assert np.array_equal(O2, first_parents)
    assert np.array_equal(F22, first_parents[:, :2])


def test_step_keeps_z_monotone_on_dtlz1():
    spec = make_problem("dtlz1", m=3, d=7)
    ds = das_dennis(3, 5)
    table = neighbors(ds, 3)
    rng = np.random.default_rng(86)
    X = rng.random((ds.count, 7))
    st = init_state(X, evaluate(spec, X), ds.W, table)
    params = VariationParams(lower=spec.lower, upper=spec.upper)
    for _ in range(25):
        prev = st.z.copy()
        st = step(st, rng, params, lambda A: evaluate(spec, A))
        assert np.all(st.z <= prev + 1e-15)


def test_default_neighborhood():
    assert default_neighborhood(10) == 2
    assert default_neighborhood(91) == 10
    assert default_neighborhood(1000) == 20
