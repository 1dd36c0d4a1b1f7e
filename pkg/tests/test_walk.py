import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qwalk import coins, graphs, walk
from qwalk.walk import InitialCoinState, ShapeError

S2 = 1 / math.sqrt(2)
unit = st.floats(0.0, 1.0)
phase = st.floats(0.0, 2 * math.pi)


def cycle_oracle(psi, coin, t):
    """Textbook update on an N-cycle: R moves +1, L moves -1."""
    for _ in range(t):
        phi = coin @ psi
        psi = np.stack([np.roll(phi[0], 1), np.roll(phi[1], -1)])
    return psi


def torus_oracle(psi, coin, W, H, t):
    """Diagonal moves on a W x H torus, amplitudes shaped (4, W, H)."""
    moves = [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    for _ in range(t):
        phi = np.einsum("ab,bxy->axy", coin, psi)
        psi = np.stack([np.roll(phi[a], m, axis=(0, 1)) for a, m in enumerate(moves)])
    return psi


def test_hadamard_first_step():
    g = graphs.make_line(3)
    st0 = walk.make_initial_state(g)
    st1 = walk.step(st0, coins.make_hadamard_coin(), g)
    o = g.origin
    assert st1.amplitudes[0, o + 1] == pytest.approx(S2)
    assert st1.amplitudes[1, o - 1] == pytest.approx(S2)
    assert st1.time == 1
    assert np.count_nonzero(st1.amplitudes) == 2


@given(st.integers(2, 30), unit, phase, unit, phase, phase, st.integers(0, 60))
def test_cycle_matches_oracle(N, eta, alpha, rho, theta, phi, t):
    g = graphs.make_cycle(N)
    coin = coins.make_general_coin2(rho, theta, phi)
    st0 = walk.make_initial_state(g, None, InitialCoinState(eta, alpha))
    got = walk.evolve(st0, coin, g, t).amplitudes
    assert np.allclose(got, cycle_oracle(st0.amplitudes, coin.entries, t), atol=1e-12)


@pytest.mark.parametrize("coin", [coins.make_grover_coin(4), coins.make_dft_coin(4)])
def test_torus_matches_oracle(coin):
    W, H, t = 5, 7, 23
    g = graphs.make_lattice2d(W, H, "torus")
    rng = np.random.default_rng(4)
    psi = rng.normal(size=(4, W * H)) + 1j * rng.normal(size=(4, W * H))
    psi /= np.linalg.norm(psi)
    got = walk.evolve(walk.WalkState(psi, g), coin, g, t).amplitudes
    ref = torus_oracle(psi.reshape(4, W, H), coin.entries, W, H, t).reshape(4, -1)
    assert np.allclose(got, ref, atol=1e-12)


@given(unit, phase, st.integers(0, 80))
def test_parity_zeros_on_line(eta, alpha, t):
    g = graphs.make_line(80)
    st_t = walk.evolve(walk.make_initial_state(g, None, InitialCoinState(eta, alpha)), coins.make_hadamard_coin(), g, t)
    p = st_t.probabilities()
    assert np.all(p[(g.coords - t) % 2 == 1] == 0.0)
    assert np.all(p[np.abs(g.coords) > t] == 0.0)


@given(st.integers(0, 25))
def test_parity_zeros_on_lattice(t):
    g = graphs.make_open_lattice(25)
    st_t = walk.evolve(walk.make_initial_state(g, None, walk.DFT_RING_STATE), coins.make_dft_coin(4), g, t)
    p = st_t.probabilities()
    odd = np.any((g.coords - t) % 2 == 1, axis=1)
    assert np.all(p[odd] == 0.0)


@given(st.integers(2, 40), unit, phase, phase, st.integers(0, 10_000))
def test_norm_conserved_long(N, rho, theta, phi, t):
    g = graphs.make_cycle(N)
    coin = coins.make_general_coin2(rho, theta, phi)
    st_t = walk.evolve(walk.make_initial_state(g), coin, g, t)
    assert abs(st_t.norm() - 1) < 1e-10


def families():
    h = coins.make_hadamard_coin()
    return [
        (graphs.make_cycle(9), coins.make_nonuniform_coin(), None),
        (graphs.make_line(30), h, None),
        (graphs.make_lattice2d(6, 4, "klein"), coins.tensor_coin(h, h), walk.SYMMETRIC_LATTICE_STATE),
        (graphs.make_lattice2d(3, 5, "projective"), coins.make_grover_coin(4), walk.GROVER_RING_STATE),
        (graphs.make_lattice2d(4, 6, "moebius"), coins.make_dft_coin(4), walk.DFT_RING_STATE),
        (graphs.make_glued_trees(3, 1), {d: coins.make_dft_coin(d) for d in (2, 3)}, InitialCoinState.from_vector([S2, S2])),
        (graphs.make_hypercube(4), coins.make_grover_coin(4), InitialCoinState.from_vector(np.full(4, 0.5))),
    ]


@pytest.mark.parametrize("g,coin,init", families(), ids=lambda x: getattr(x, "kind", None))
@given(t=st.integers(0, 200))
def test_reversible_and_normalised(g, coin, init, t):
    st0 = walk.make_initial_state(g, None, init)
    st_t = walk.evolve(st0, coin, g, t)
    assert abs(st_t.norm() - 1) < 1e-10
    assert abs(st_t.probabilities().sum() - 1) < 1e-10
    back = walk.evolve_adjoint(st_t, coin, g, t)
    assert np.abs(back.amplitudes - st0.amplitudes).max() < 1e-9
    assert back.time == 0


def test_trajectory_matches_evolve():
    g = graphs.make_cycle(11)
    coin = coins.make_general_coin2(0.7, 0.4, 2.0)
    st0 = walk.make_initial_state(g, 3, InitialCoinState(0.4, 1.0))
    states = list(walk.trajectory(st0, coin, 12))
    assert [s.time for s in states] == list(range(13))
    assert np.allclose(states[-1].amplitudes, walk.evolve(st0, coin, g, 12).amplitudes)


def test_propagator_batches():
    g = graphs.make_cycle(6)
    prop = walk.Propagator(g, coins.make_hadamard_coin())
    batch = np.random.default_rng(0).normal(size=(3, 2, 6)).astype(complex)
    out = prop.run(batch, 5)
    for i in range(3):
        assert np.allclose(out[i], prop.run(batch[i], 5))


def test_hypercube_weight_class_symmetry():
    g = graphs.make_hypercube(4)
    init = InitialCoinState.from_vector(np.full(4, 0.5))
    for s in walk.trajectory(walk.make_initial_state(g, 0, init), coins.make_grover_coin(4), 30):
        p = s.probabilities()
        for w in range(5):
            cls = p[g.coords == w]
            assert np.ptp(cls) < 1e-12


def test_glued_trees_needs_per_degree_coins():
    g = graphs.make_glued_trees(2)
    st0 = walk.make_initial_state(g, None, InitialCoinState.from_vector([S2, S2]))
    with pytest.raises(ShapeError, match="mixed degrees"):
        walk.step(st0, coins.make_grover_coin(3), g)
    with pytest.raises(ShapeError, match="degree 2"):
        walk.step(st0, {3: coins.make_grover_coin(3)}, g)


def test_coin_degree_mismatch():
    g = graphs.make_lattice2d(3, 3, "torus")
    st0 = walk.make_initial_state(g, None, walk.GROVER_RING_STATE)
    with pytest.raises(ShapeError):
        walk.step(st0, coins.make_hadamard_coin(), g)


def test_wrong_graph_rejected():
    g = graphs.make_cycle(4)
    st0 = walk.make_initial_state(g)
    with pytest.raises(ShapeError):
        walk.step(st0, coins.make_hadamard_coin(), graphs.make_cycle(4))


def test_initial_state_validation():
    with pytest.raises(ValueError, match="eta"):
        InitialCoinState(1.5)
    with pytest.raises(ValueError, match="unit norm"):
        InitialCoinState.from_vector([1, 1])
    with pytest.raises(ShapeError):
        InitialCoinState(0.5).vector(4)
    with pytest.raises(ShapeError):
        walk.make_initial_state(graphs.make_cycle(4), 9)


def test_named_lattice_states_are_normalised():
    for s in (walk.SYMMETRIC_LATTICE_STATE, walk.GROVER_RING_STATE, walk.DFT_RING_STATE):
        assert np.linalg.norm(s.vector(4)) == pytest.approx(1)
    assert walk.lattice_coin_state("ru").vector(4)[3] == 1


def test_state_is_immutable():
    st0 = walk.make_initial_state(graphs.make_cycle(4))
    with pytest.raises(ValueError):
        st0.amplitudes[0, 0] = 0
    with pytest.raises(ValueError):
        walk.evolve(st0, coins.make_hadamard_coin(), None, -1)
