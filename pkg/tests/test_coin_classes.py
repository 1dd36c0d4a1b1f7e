import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwalk import analysis, coin_classes, coins, graphs, walk
from qwalk.walk import InitialCoinState


@pytest.fixture(scope="module")
def all_coins():
    return coin_classes.enumerate_unbiased_coins4()


@pytest.fixture(scope="module")
def classes(all_coins):
    return coin_classes.classify_coins(all_coins, 20)


def test_enumeration(all_coins):
    assert len(all_coins) == 640
    mats = np.array([c.entries for c in all_coins])
    assert np.allclose(np.abs(mats), 0.5)
    assert np.allclose(mats, mats.transpose(0, 2, 1))
    assert np.all(mats[:, 0, 0] == 0.5)
    assert max(c.unitarity_error for c in all_coins) < 1e-12
    keys = {tuple(np.round(m.ravel() * 2).tolist()) for m in mats}
    assert len(keys) == 640


def test_named_coins_are_enumerated(all_coins):
    # the set fixes C[0, 0] = +1/2, so compare up to a global phase
    h = coins.make_hadamard_coin()
    mats = np.array([c.entries for c in all_coins])
    for named in (coins.tensor_coin(h, h), coins.make_grover_coin(4), coins.make_dft_coin(4)):
        m = named.entries / (2 * named.entries[0, 0])
        assert np.any(np.all(np.abs(mats - m) < 1e-12, axis=(1, 2)))


def test_class_sizes(classes):
    sizes = sorted(c.members for c in classes)
    assert sizes == [32] * 4 + [64] * 4 + [128] * 2
    assert sorted(i for c in classes for i in c.member_indices) == list(range(640))


def partition(cls):
    return {frozenset(c.member_indices) for c in cls}


@pytest.mark.parametrize("t_probe", [15, 30])
def test_classification_stable_in_probe_time(all_coins, classes, t_probe):
    assert partition(coin_classes.classify_coins(all_coins, t_probe)) == partition(classes)


def test_named_coins_in_distinct_classes(classes):
    h = coins.make_hadamard_coin()
    idx = [coin_classes.class_index(c, classes) for c in (coins.tensor_coin(h, h), coins.make_grover_coin(4), coins.make_dft_coin(4))]
    assert None not in idx and len(set(idx)) == 3


def test_class_index_outside_set(classes):
    rng = np.random.default_rng(1)
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    assert coin_classes.class_index(coins.make_explicit_coin(q), classes) is None


def test_trajectories_match_direct_walk():
    grover = coins.make_grover_coin(4)
    traj = coin_classes.second_moment_trajectories([grover], 12)[0]
    g = graphs.make_open_lattice(12)
    states = walk.trajectory(walk.make_initial_state(g, None, walk.lattice_coin_state("RU")), grover, 12)
    direct = [analysis.lattice_moments(analysis.position_distribution(s)).second for s in states][1:]
    assert np.allclose(traj, direct, atol=1e-10)


@settings(max_examples=20)
@given(st.lists(st.floats(-1, 1), min_size=8, max_size=8))
def test_moment_forms_match_direct_walk(parts):
    vec = np.array(parts[:4]) + 1j * np.array(parts[4:])
    if np.linalg.norm(vec) < 1e-3:
        vec = np.array([1, 0, 0, 0], dtype=complex)
    vec = vec / np.linalg.norm(vec)
    coin, t = coins.make_dft_coin(4), 9
    forms = coin_classes.moment_forms(coin, t)
    m2, mx, my = (v[0] for v in coin_classes.evaluate_states(forms, vec[None, :]))
    g = graphs.make_open_lattice(t)
    st_t = walk.evolve(walk.make_initial_state(g, None, InitialCoinState.from_vector(vec)), coin, g, t)
    ref = analysis.lattice_moments(analysis.position_distribution(st_t))
    assert (m2, mx, my) == pytest.approx((ref.second, ref.mean_x, ref.mean_y), abs=1e-10)


def test_default_grid():
    grid = coin_classes.default_initial_grid(50, seed=3)
    assert grid.shape == (36 + 3 + 50, 4)
    assert np.allclose(np.linalg.norm(grid, axis=1), 1)
    assert np.array_equal(grid, coin_classes.default_initial_grid(50, seed=3))


def test_grover_extremes():
    rep = coin_classes.extremal_spreading(coins.make_grover_coin(4), coin_classes.default_initial_grid(200), 40)
    assert rep.exact_min_second <= rep.min_second + 1e-9
    assert rep.max_second <= rep.exact_max_second + 1e-9
    # the ring state reaches the exact maximum and the grid contains the exact minimum
    assert rep.max_second == pytest.approx(rep.exact_max_second, rel=1e-12)
    assert rep.min_second == pytest.approx(rep.exact_min_second, rel=1e-12)
    assert rep.extremes_centred
    assert rep.to_dict()["t"] == 40


def test_extremal_spreading_rejects_bad_grid():
    with pytest.raises(ValueError):
        coin_classes.extremal_spreading(coins.make_grover_coin(4), np.ones((3, 2)))


def test_variance_extremes_bound_second_moment():
    grid = coin_classes.default_initial_grid(100)
    coin = coins.make_dft_coin(4)
    lo, hi = coin_classes.variance_extremes(coin, grid, 15)
    rep = coin_classes.extremal_spreading(coin, grid, 15)
    assert lo <= rep.min_variance + 1e-9 and hi >= rep.max_variance - 1e-9
    assert hi <= rep.exact_max_second + 1e-9
