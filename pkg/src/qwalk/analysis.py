"""
Position distributions and their statistics.

Moments are taken about the starting vertex, not about the mean, so the
skewness reported here is ``<x^3> / <x^2>^{3/2}`` with ``x`` measured from
the origin.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from numpy.typing import NDArray

from .graphs import WalkGraph
from .walk import ShapeError, WalkState

__all__ = [
    "Distribution",
    "MomentReport",
    "LatticeMoments",
    "position_distribution",
    "moments",
    "lattice_moments",
    "column_distribution",
    "total_variation",
    "uniform_distribution",
    "classical_walk_distribution",
]

PROB_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Distribution:
    """
    Probabilities over vertices (or columns).

    ``labels`` gives each entry an integer coordinate relative to the origin:
    shape ``(n,)`` in one dimension, ``(n, 2)`` on the lattice.
    """

    probs: NDArray[np.float64]
    labels: NDArray[np.int64] | None = None
    origin: int = 0
    kind: str = "vertex"

    def __post_init__(self) -> None:
        p = np.array(self.probs, dtype=np.float64)
        if np.any(p < -1e-12):
            raise ValueError(f"negative probability {p.min():.3e}")
        if abs(p.sum() - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities sum to {p.sum():.15f}")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)
        if self.labels is not None:
            lab = np.array(self.labels, dtype=np.int64)
            if lab.shape[0] != p.size:
                raise ShapeError("labels and probabilities differ in length")
            lab.setflags(write=False)
            object.__setattr__(self, "labels", lab)

    def __len__(self) -> int:
        return self.probs.size

    @property
    def ndim(self) -> int | None:
        return None if self.labels is None else self.labels.ndim

    def with_probs(self, probs) -> "Distribution":
        return Distribution(probs, self.labels, self.origin, self.kind)


@dataclass(frozen=True)
class MomentReport:
    mean: float
    second: float
    third: float
    skewness: float
    std_dev: float

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class LatticeMoments:
    """First moments per axis, ``<x^2 + y^2>`` about the origin, and its variance."""

    mean_x: float
    mean_y: float
    second: float
    variance: float
    std_dev: float

    def to_dict(self) -> dict:
        return asdict(self)


def position_distribution(state: WalkState) -> Distribution:
    g = state.graph
    return Distribution(state.probabilities(), g.coords, g.origin, "vertex")


def moments(dist: Distribution) -> MomentReport:
    if dist.labels is None or dist.labels.ndim != 1:
        raise ValueError("moments need one-dimensional position labels")
    x = dist.labels.astype(np.float64)
    p = dist.probs
    m1 = float(p @ x)
    m2 = float(p @ x**2)
    m3 = float(p @ x**3)
    skew = m3 / m2**1.5 if m2 > 0 else 0.0
    var = max(m2 - m1**2, 0.0)
    return MomentReport(m1, m2, m3, skew, float(np.sqrt(var)))


def lattice_moments(dist: Distribution) -> LatticeMoments:
    if dist.labels is None or dist.labels.ndim != 2:
        raise ValueError("lattice_moments need two-dimensional position labels")
    x, y = dist.labels.T.astype(np.float64)
    p = dist.probs
    mx, my = float(p @ x), float(p @ y)
    second = float(p @ (x**2 + y**2))
    var = max(second - mx**2 - my**2, 0.0)
    return LatticeMoments(mx, my, second, var, float(np.sqrt(var)))


def column_distribution(state: WalkState) -> Distribution:
    """Probability per column of a glued-trees graph."""
    g = state.graph
    if g.kind != "glued_trees" or g.columns is None:
        raise ValueError(f"column_distribution needs a glued-trees graph, got {g.kind}")
    ncol = int(g.columns.max()) + 1
    p = np.bincount(g.columns, weights=state.probabilities(), minlength=ncol)
    return Distribution(p / p.sum(), np.arange(ncol), 0, "column")


def total_variation(d1: Distribution | NDArray, d2: Distribution | NDArray) -> float:
    p = d1.probs if isinstance(d1, Distribution) else np.asarray(d1, dtype=np.float64)
    q = d2.probs if isinstance(d2, Distribution) else np.asarray(d2, dtype=np.float64)
    if p.shape != q.shape:
        raise ShapeError(f"supports differ: {p.shape} vs {q.shape}")
    return 0.5 * float(np.abs(p - q).sum())


def uniform_distribution(graph_or_n: WalkGraph | int) -> Distribution:
    if isinstance(graph_or_n, WalkGraph):
        n = graph_or_n.num_vertices
        return Distribution(np.full(n, 1.0 / n), graph_or_n.coords, graph_or_n.origin)
    return Distribution(np.full(int(graph_or_n), 1.0 / int(graph_or_n)))


def classical_walk_distribution(graph: WalkGraph, t: int, start: int | None = None) -> Distribution:
    """
    Simple random walk (uniform choice among neighbours) after ``t`` steps.

    Evolves the probability vector exactly, so there is no sampling noise.
    For glued trees the result is returned per column.
    """
    n = graph.num_vertices
    p = np.zeros(n)
    p[graph.origin if start is None else start] = 1.0
    mask = graph.port_mask.T
    src = np.repeat(np.arange(n), graph.degree)
    dst = graph.neighbors[mask]
    w = 1.0 / graph.degree[src]
    for _ in range(t):
        p = np.bincount(dst, weights=p[src] * w, minlength=n)
    if graph.kind == "glued_trees":
        ncol = int(graph.columns.max()) + 1
        pc = np.bincount(graph.columns, weights=p, minlength=ncol)
        return Distribution(pc / pc.sum(), np.arange(ncol), 0, "column")
    return Distribution(p / p.sum(), graph.coords, graph.origin)
