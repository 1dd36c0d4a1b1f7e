"""
Walk states and the one-step evolution ``U = S (C (x) I)``.

States are immutable; :func:`step` and :func:`evolve` return new states.
Heavy loops go through :class:`Propagator`, which caches the coin blocks
and the shift permutation for a fixed (graph, coin) pair.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .coins import CoinOperator
from .graphs import WalkGraph

__all__ = [
    "ShapeError",
    "InitialCoinState",
    "WalkState",
    "CoinField",
    "make_initial_state",
    "lattice_coin_state",
    "SYMMETRIC_LATTICE_STATE",
    "GROVER_RING_STATE",
    "DFT_RING_STATE",
    "Propagator",
    "step",
    "step_adjoint",
    "evolve",
    "evolve_adjoint",
    "trajectory",
]

NORM_TOL = 1e-10


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class InitialCoinState:
    """
    Coin part of a single-vertex initial state.

    For degree 2 the vector is ``sqrt(eta) |R> + e^{i alpha} sqrt(1 - eta) |L>``;
    ``explicit`` overrides ``(eta, alpha)`` and must have unit norm.
    """

    eta: float = 1.0
    alpha: float = 0.0
    explicit: tuple[complex, ...] | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta must lie in [0, 1], got {self.eta}")
        if self.explicit is not None:
            vec = np.asarray(self.explicit, dtype=np.complex128)
            norm = np.linalg.norm(vec)
            if abs(norm - 1.0) > 1e-12:
                raise ValueError(f"explicit coin state must have unit norm, got {norm}")
            object.__setattr__(self, "explicit", tuple(complex(c) for c in vec))

    @classmethod
    def from_vector(cls, vec) -> "InitialCoinState":
        return cls(explicit=tuple(np.asarray(vec, dtype=np.complex128)))

    def vector(self, d: int = 2) -> NDArray[np.complex128]:
        if self.explicit is not None:
            vec = np.array(self.explicit, dtype=np.complex128)
            if vec.size != d:
                raise ShapeError(f"coin state has dimension {vec.size}, vertex needs {d}")
            return vec
        if d != 2:
            raise ShapeError(f"(eta, alpha) parametrizes degree-2 coins only, got degree {d}")
        return np.array(
            [np.sqrt(self.eta), np.exp(1j * self.alpha) * np.sqrt(1.0 - self.eta)],
            dtype=np.complex128,
        )


def lattice_coin_state(label: str) -> InitialCoinState:
    """Basis state of the lattice coin, e.g. ``"RU"``."""
    from .graphs import LATTICE_PORTS

    vec = np.zeros(4, dtype=np.complex128)
    vec[LATTICE_PORTS.index(label.upper())] = 1.0
    return InitialCoinState.from_vector(vec)


_S2 = 1 / np.sqrt(2)
# (|L> + i|R>) (x) (|D> + i|U>) / 2
SYMMETRIC_LATTICE_STATE = InitialCoinState.from_vector(np.array([1, 1j, 1j, -1]) / 2)
# (|LD> - |LU> - |RD> + |RU>) / 2
GROVER_RING_STATE = InitialCoinState.from_vector(np.array([1, -1, -1, 1]) / 2)
# (|LD> + w |LU> + |RD> - w |RU>) / 2 with w = (1 - i)/sqrt 2
DFT_RING_STATE = InitialCoinState.from_vector(
    np.array([1, (1 - 1j) * _S2, 1, -(1 - 1j) * _S2]) / 2
)


@dataclass(frozen=True, eq=False)
class WalkState:
    """Amplitudes ``psi[a, v]`` on ``graph`` after ``time`` steps."""

    amplitudes: NDArray[np.complex128]
    graph: WalkGraph
    time: int = 0

    def __post_init__(self) -> None:
        amp = np.array(self.amplitudes, dtype=np.complex128)
        if amp.shape != (self.graph.coin_dim, self.graph.num_vertices):
            raise ShapeError(
                f"amplitudes have shape {amp.shape}, graph needs "
                f"{(self.graph.coin_dim, self.graph.num_vertices)}"
            )
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> NDArray[np.float64]:
        """Vertex probabilities summed over the coin register."""
        return np.sum(np.abs(self.amplitudes) ** 2, axis=0)

    def overlap(self, other: "WalkState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "WalkState") -> float:
        """``|<self|other>|``, including the coin register."""
        return abs(self.overlap(other))


def make_initial_state(
    graph: WalkGraph,
    vertex: int | None = None,
    coin: InitialCoinState | NDArray | None = None,
) -> WalkState:
    """Coin vector placed at ``vertex`` (default: the graph origin)."""
    v = graph.origin if vertex is None else int(vertex)
    if not 0 <= v < graph.num_vertices:
        raise ShapeError(f"vertex {v} not in graph with {graph.num_vertices} vertices")
    if coin is None:
        coin = InitialCoinState()
    if not isinstance(coin, InitialCoinState):
        coin = InitialCoinState.from_vector(coin)
    d = int(graph.degree[v])
    amp = np.zeros((graph.coin_dim, graph.num_vertices), dtype=np.complex128)
    amp[:d, v] = coin.vector(d)
    return WalkState(amp, graph, 0)


CoinField = CoinOperator | Mapping[int, CoinOperator]


def _coin_blocks(graph: WalkGraph, coin: CoinField) -> list[tuple[NDArray, NDArray | slice]]:
    """Split the vertices into groups sharing a coin: ``[(matrix, vertex index)]``."""
    if isinstance(coin, CoinOperator):
        if not graph.is_regular:
            raise ShapeError("graph has mixed degrees; pass a mapping degree -> coin")
        if coin.degree != graph.coin_dim:
            raise ShapeError(f"coin of degree {coin.degree} on graph of degree {graph.coin_dim}")
        return [(coin.entries, slice(None))]
    blocks = []
    for d in np.unique(graph.degree):
        c = coin.get(int(d))
        if c is None:
            raise ShapeError(f"no coin supplied for vertices of degree {d}")
        if c.degree != d:
            raise ShapeError(f"coin of degree {c.degree} supplied for degree-{d} vertices")
        blocks.append((c.entries, np.nonzero(graph.degree == d)[0]))
    return blocks


class Propagator:
    """
    Repeated application of ``U`` (or its adjoint) to raw amplitude arrays.

    Arrays may carry leading batch axes: shape ``(..., d, V)``.
    """

    def __init__(self, graph: WalkGraph, coin: CoinField):
        self.graph = graph
        self.blocks = _coin_blocks(graph, coin)
        self._target = graph.shift_target
        self._source = graph.shift_source

    def _coin(self, psi: NDArray, adjoint: bool = False) -> NDArray:
        if len(self.blocks) == 1 and isinstance(self.blocks[0][1], slice):
            c = self.blocks[0][0]
            return np.matmul(c.conj().T if adjoint else c, psi)
        out = np.zeros_like(psi)
        for c, idx in self.blocks:
            d = c.shape[0]
            m = c.conj().T if adjoint else c
            out[..., :d, idx] = np.matmul(m, psi[..., :d, idx])
        return out

    def apply(self, psi: NDArray) -> NDArray:
        phi = self._coin(psi)
        flat = phi.reshape(phi.shape[:-2] + (-1,))
        return flat[..., self._source].reshape(psi.shape)

    def apply_adjoint(self, psi: NDArray) -> NDArray:
        flat = psi.reshape(psi.shape[:-2] + (-1,))
        back = flat[..., self._target].reshape(psi.shape)
        return self._coin(back, adjoint=True)

    def run(self, psi: NDArray, t: int) -> NDArray:
        for _ in range(t):
            psi = self.apply(psi)
        return psi


def _check_graph(state: WalkState, graph: WalkGraph | None) -> WalkGraph:
    if graph is not None and graph is not state.graph:
        raise ShapeError("state does not live on the given graph")
    return state.graph


def step(state: WalkState, coin: CoinField, graph: WalkGraph | None = None) -> WalkState:
    g = _check_graph(state, graph)
    return WalkState(Propagator(g, coin).apply(state.amplitudes), g, state.time + 1)


def step_adjoint(state: WalkState, coin: CoinField, graph: WalkGraph | None = None) -> WalkState:
    g = _check_graph(state, graph)
    return WalkState(Propagator(g, coin).apply_adjoint(state.amplitudes), g, state.time - 1)


def evolve(state: WalkState, coin: CoinField, graph: WalkGraph | None = None, t: int = 1) -> WalkState:
    """``U^t |state>``; ``t = 0`` returns the input unchanged."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if t == 0:
        return state
    g = _check_graph(state, graph)
    return WalkState(Propagator(g, coin).run(state.amplitudes, t), g, state.time + t)


def evolve_adjoint(state: WalkState, coin: CoinField, graph: WalkGraph | None = None, t: int = 1) -> WalkState:
    g = _check_graph(state, graph)
    prop = Propagator(g, coin)
    psi = state.amplitudes
    for _ in range(t):
        psi = prop.apply_adjoint(psi)
    return WalkState(psi, g, state.time - t)


def trajectory(state: WalkState, coin: CoinField, t: int) -> Iterator[WalkState]:
    """Yield the states at times ``0, 1, ..., t``."""
    prop = Propagator(state.graph, coin)
    psi = state.amplitudes
    yield state
    for s in range(1, t + 1):
        psi = prop.apply(psi)
        yield WalkState(psi, state.graph, state.time + s)
