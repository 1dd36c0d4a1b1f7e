import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qwalk import graphs
from qwalk.graphs import BoundaryMode, GraphError

closed_modes = [BoundaryMode.TORUS, BoundaryMode.MOEBIUS, BoundaryMode.KLEIN, BoundaryMode.PROJECTIVE]


def move(g, v, a):
    return int(g.neighbors[v, a])


def test_cycle_wrap():
    g = graphs.make_cycle(4)
    assert g.num_vertices == 4
    assert move(g, 3, 0) == 0
    assert move(g, 0, 1) == 3


def test_two_cycle_both_ports_swap():
    g = graphs.make_cycle(2)
    assert list(g.neighbors[:, 0]) == [1, 0]
    assert list(g.neighbors[:, 1]) == [1, 0]


@pytest.mark.parametrize("bad", [0, 1, -2])
def test_cycle_too_small(bad):
    with pytest.raises(GraphError):
        graphs.make_cycle(bad)


def test_cycle_rejects_float():
    with pytest.raises(TypeError):
        graphs.make_cycle(4.0)


def test_line_window():
    g = graphs.make_line(10)
    assert g.num_vertices == 23
    assert g.coords[g.origin] == 0
    assert g.coords.min() == -11 and g.coords.max() == 11


def test_open_lattice_holds_light_cone():
    g = graphs.make_open_lattice(40)
    assert g.params["W"] == g.params["H"] == 83
    assert tuple(g.coords[g.origin]) == (0, 0)


@pytest.mark.parametrize("mode", closed_modes)
@pytest.mark.parametrize("W,H", [(2, 2), (3, 5), (4, 8), (7, 4)])
def test_lattice_edges_return(mode, W, H):
    g = graphs.make_lattice2d(W, H, mode)
    for v, a in itertools.product(range(g.num_vertices), range(4)):
        w = move(g, v, a)
        assert move(g, w, g.return_port[v, a]) == v


def test_torus_moves():
    g = graphs.make_lattice2d(4, 4, "torus")
    ru = graphs.LATTICE_PORTS.index("RU")
    ld = graphs.LATTICE_PORTS.index("LD")
    assert move(g, 0, ru) == 1 * 4 + 1
    assert move(g, 0, ld) == 3 * 4 + 3


def test_klein_seam_reflects_y():
    W, H = 4, 6
    g = graphs.make_lattice2d(W, H, "klein")
    ru = graphs.LATTICE_PORTS.index("RU")
    v = (W - 1) * H + 1  # (3, 1)
    w = move(g, v, ru)
    # (4, 2) is identified with (0, H-1-2) and the vertical label flips
    assert divmod(w, H) == (0, H - 1 - 2)
    assert graphs.LATTICE_PORTS[g.arrival[v, ru]] == "RD"


def test_moebius_leaves_y_open():
    g = graphs.make_lattice2d(4, 6, "moebius")
    assert BoundaryMode.MOEBIUS.twists == (True, False)
    assert BoundaryMode.PROJECTIVE.twists == (True, True)
    assert g.params["boundary"] is BoundaryMode.MOEBIUS


def test_unknown_boundary():
    with pytest.raises(ValueError):
        graphs.make_lattice2d(4, 4, "sphere")


@pytest.mark.parametrize("N", [1, 2, 4, 7])
def test_glued_trees_counts(N):
    g = graphs.make_glued_trees(N, seed=N)
    assert g.num_vertices == 2 * (2 ** (N + 1) - 1)
    pops = np.bincount(g.columns)
    half = [2**k for k in range(N + 1)]
    assert list(pops) == half + half[::-1]
    assert g.degree[0] == 2 and g.degree[g.extra["exit"]] == 2
    interior = np.ones(g.num_vertices, bool)
    interior[[0, g.extra["exit"]]] = False
    assert np.all(g.degree[interior] == 3)
    assert g.degree.sum() % 2 == 0


def test_glued_trees_62_nodes():
    g = graphs.make_glued_trees(4)
    assert g.num_vertices == 62
    assert g.columns.max() + 1 == 10


@given(st.integers(1, 6), st.integers(0, 10_000))
def test_glued_trees_simple_graph(N, seed):
    g = graphs.make_glued_trees(N, seed)
    for v in range(g.num_vertices):
        nb = g.neighbors[v, : g.degree[v]]
        assert len(set(nb.tolist())) == nb.size
        assert v not in nb
    # each leaf has exactly two neighbours in the opposite leaf column
    leaves = np.flatnonzero(g.columns == N)
    for v in leaves:
        cross = [w for w in g.neighbors[v, 1:3] if g.columns[w] == N + 1]
        assert len(cross) == 2


def test_glued_trees_seeded():
    a = graphs.make_glued_trees(5, 11)
    b = graphs.make_glued_trees(5, 11)
    assert np.array_equal(a.neighbors, b.neighbors)


def test_hypercube():
    g = graphs.make_hypercube(3)
    assert g.num_vertices == 8 and np.all(g.degree == 3)
    assert move(g, 0b101, 1) == 0b111
    g1 = graphs.make_hypercube(1)
    assert list(g1.neighbors[:, 0]) == [1, 0]


@pytest.mark.parametrize("n", [3, 5])
def test_hypercube_distance_shells(n):
    g = graphs.make_hypercube(n)
    assert list(np.bincount(g.coords)) == [math.comb(n, k) for k in range(n + 1)]


def shift_is_bijection(g):
    tgt = g.shift_target[g.port_mask.ravel()]
    return np.unique(tgt).size == tgt.size and np.array_equal(g.shift_target[g.shift_source], np.arange(g.shift_target.size))


@given(
    st.integers(2, 9),
    st.integers(2, 9),
    st.sampled_from(list(BoundaryMode)),
)
def test_lattice_shift_bijective(W, H, mode):
    assert shift_is_bijection(graphs.make_lattice2d(W, H, mode))


@given(st.integers(2, 200))
def test_cycle_shift_bijective(N):
    assert shift_is_bijection(graphs.make_cycle(N))


def test_flip_flop_shift_is_involution():
    g = graphs.make_glued_trees(4, 3)
    tgt = g.shift_target
    assert np.array_equal(tgt[tgt], np.arange(tgt.size))


def test_inconsistent_ports_rejected():
    with pytest.raises(GraphError, match="bijection"):
        graphs.WalkGraph(
            kind="broken",
            params={},
            degree=[2, 2],
            neighbors=[[1, 1], [0, 0]],
            return_port=[[0, 0], [0, 0]],
            arrival=[[0, 0], [0, 0]],
        )


def test_to_json_lists_ports():
    d = graphs.make_cycle(3).to_json()
    assert d["kind"] == "cycle"
    assert d["vertices"][0]["ports"] == [[1, 1], [2, 0]]
