"""
The 640 unbiased symmetric 4 x 4 coins and their spreading classes.

Coins have every entry in ``{+-1/2, +-i/2}``, are symmetric (``C = C^T``),
and have top-left entry ``+1/2``. Classes group coins whose second moment
``<x^2 + y^2>`` follows the same trajectory from ``|RU>`` at the origin.

Variances for arbitrary initial coin states are evaluated through the
linearity of the walk: with ``psi_t = sum_a c_a psi_t^(a)`` the second
moment is the quadratic form ``c^dagger M c`` built from four basis runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .coins import CoinOperator, make_explicit_coin
from .graphs import make_open_lattice
from .walk import (
    DFT_RING_STATE,
    GROVER_RING_STATE,
    SYMMETRIC_LATTICE_STATE,
    InitialCoinState,
    lattice_coin_state,
)

__all__ = [
    "CoinClass",
    "SpreadingReport",
    "enumerate_unbiased_coins4",
    "second_moment_trajectories",
    "classify_coins",
    "class_index",
    "moment_forms",
    "default_initial_grid",
    "extremal_spreading",
    "variance_extremes",
]

_PHASES = np.array([1, -1, 1j, -1j], dtype=np.complex128) / 2


def enumerate_unbiased_coins4() -> list[CoinOperator]:
    """All symmetric unitaries with entries in ``{+-1/2, +-i/2}`` and ``C[0, 0] = 1/2``.

    Ordered lexicographically by the entry codes ``(1, -1, i, -i)`` read
    row by row.
    """
    rows = np.array(list(itertools.product(_PHASES, repeat=4)))
    orth = np.abs(rows.conj() @ rows.T) < 1e-12
    first = np.nonzero(rows[:, 0] == 0.5)[0]
    out = []
    for a in first:
        cand_b = np.nonzero(orth[a])[0]
        for b in cand_b:
            if rows[b, 0] != rows[a, 1]:
                continue
            cand_c = cand_b[orth[b, cand_b]]
            for c in cand_c:
                if rows[c, 0] != rows[a, 2] or rows[c, 1] != rows[b, 2]:
                    continue
                for d in cand_c[orth[c, cand_c]]:
                    r = rows[d]
                    if r[0] == rows[a, 3] and r[1] == rows[b, 3] and r[2] == rows[c, 3]:
                        out.append(make_explicit_coin(rows[[a, b, c, d]]))
    return out


def second_moment_trajectories(
    coins: list[CoinOperator] | NDArray,
    t: int,
    initial: InitialCoinState | None = None,
    window: int | None = None,
) -> NDArray[np.float64]:
    """``<x^2 + y^2>`` at times ``1..t`` for every coin, shape ``(n_coins, t)``."""
    mats = np.array([np.asarray(c) for c in coins], dtype=np.complex128)
    g = make_open_lattice(t if window is None else window)
    n = g.num_vertices
    vec = (initial or lattice_coin_state("RU")).vector(4)
    psi = np.zeros((len(mats), 4, n), dtype=np.complex128)
    psi[:, :, g.origin] = vec
    r2 = np.sum(g.coords.astype(float) ** 2, axis=1)
    src = g.shift_source
    out = np.empty((len(mats), t))
    for s in range(t):
        phi = np.matmul(mats, psi).reshape(len(mats), -1)
        psi = phi[:, src].reshape(psi.shape)
        out[:, s] = np.sum(np.abs(psi) ** 2, axis=1) @ r2
    return out


@dataclass
class CoinClass:
    class_id: int
    representative: CoinOperator
    members: int
    signature: NDArray[np.float64]
    member_indices: list[int] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        rep = self.representative.entries
        return {
            "class_id": self.class_id,
            "members": self.members,
            "representative": {"re": rep.real.tolist(), "im": rep.imag.tolist()},
            "signature": self.signature.tolist(),
        }


def classify_coins(
    coins: list[CoinOperator], t_probe: int = 20, tol: float = 1e-9, window: int | None = None
) -> list[CoinClass]:
    """
    Group coins with identical second-moment trajectory (``max |diff| <= tol``).

    The representative of each class is its first member in input order.
    Raises if two distinct classes come closer than ``1e-3`` anywhere, since
    the grouping tolerance would then be unsafe.
    """
    if t_probe < 10:
        raise ValueError("t_probe must be >= 10")
    traj = second_moment_trajectories(coins, t_probe, window=window)
    classes: list[CoinClass] = []
    for i, sig in enumerate(traj):
        for cl in classes:
            if np.max(np.abs(cl.signature - sig)) <= tol:
                cl.members += 1
                cl.member_indices.append(i)
                break
        else:
            classes.append(CoinClass(len(classes), coins[i], 1, sig, [i]))
    sigs = np.array([c.signature for c in classes])
    if len(classes) > 1:
        gaps = np.max(np.abs(sigs[:, None, :] - sigs[None, :, :]), axis=-1)
        gap = gaps[~np.eye(len(classes), dtype=bool)].min()
        if gap <= 1e-3:
            raise RuntimeError(f"classes separated by only {gap:.2e}; tolerance unsafe")
    return classes


def class_index(coin: CoinOperator, classes: list[CoinClass], tol: float = 1e-9) -> int | None:
    """Class whose signature ``coin`` reproduces, or None."""
    t = classes[0].signature.size
    sig = second_moment_trajectories([coin], t)[0]
    for cl in classes:
        if np.max(np.abs(cl.signature - sig)) <= tol:
            return cl.class_id
    return None


def moment_forms(coin: CoinOperator, t: int) -> tuple[NDArray, NDArray, NDArray]:
    """
    Hermitian 4 x 4 forms ``(M2, Mx, My)`` so that for a coin state ``c``
    ``<x^2+y^2> = c^dag M2 c``, ``<x> = c^dag Mx c`` and ``<y> = c^dag My c``.
    """
    g = make_open_lattice(t)
    n = g.num_vertices
    psi = np.zeros((4, 4, n), dtype=np.complex128)
    psi[np.arange(4), np.arange(4), g.origin] = 1.0
    src = g.shift_source
    for _ in range(t):
        psi = np.matmul(coin.entries, psi).reshape(4, -1)[:, src].reshape(4, 4, n)
    x, y = g.coords.T.astype(float)

    def form(w):
        return np.einsum("iav,jav,v->ij", psi.conj(), psi, w)

    return form(x**2 + y**2), form(x), form(y)


_ONE_D = [
    np.array([1, 0]),
    np.array([0, 1]),
    np.array([1, 1]) / np.sqrt(2),
    np.array([1, -1]) / np.sqrt(2),
    np.array([1, 1j]) / np.sqrt(2),
    np.array([1, -1j]) / np.sqrt(2),
]


def default_initial_grid(n_samples: int = 1000, seed: int = 0) -> NDArray[np.complex128]:
    """
    Product states of the six axis states, the three named symmetric states,
    and ``n_samples`` Haar-random 4-vectors from ``seed``.
    """
    prods = [np.kron(a, b) for a in _ONE_D for b in _ONE_D]
    named = [s.vector(4) for s in (SYMMETRIC_LATTICE_STATE, GROVER_RING_STATE, DFT_RING_STATE)]
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(n_samples, 4)) + 1j * rng.normal(size=(n_samples, 4))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    return np.vstack([np.array(prods), np.array(named), z]).astype(np.complex128)


@dataclass
class SpreadingReport:
    """Extremes of the second moment over a grid of initial coin states."""

    t: int
    min_second: float
    max_second: float
    argmin: NDArray[np.complex128]
    argmax: NDArray[np.complex128]
    min_variance: float
    max_variance: float
    mean_at_min: tuple[float, float]
    mean_at_max: tuple[float, float]
    exact_min_second: float
    exact_max_second: float

    @property
    def extremes_centred(self) -> bool:
        """Both extremal distributions have zero first moment (to 1e-6)."""
        return bool(np.max(np.abs(self.mean_at_min + self.mean_at_max)) < 1e-6)

    def to_dict(self) -> dict:
        cplx = lambda v: [[float(c.real), float(c.imag)] for c in v]
        return {
            "t": self.t,
            "min_second": self.min_second,
            "max_second": self.max_second,
            "min_variance": self.min_variance,
            "max_variance": self.max_variance,
            "argmin": cplx(self.argmin),
            "argmax": cplx(self.argmax),
            "mean_at_min": list(self.mean_at_min),
            "mean_at_max": list(self.mean_at_max),
            "exact_min_second": self.exact_min_second,
            "exact_max_second": self.exact_max_second,
            "extremes_centred": self.extremes_centred,
        }


def evaluate_states(forms, states: NDArray) -> tuple[NDArray, NDArray, NDArray]:
    """Second moment, mean x and mean y for each row of ``states``."""
    m2, mx, my = forms
    q = lambda m: np.real(np.einsum("si,ij,sj->s", states.conj(), m, states))
    return q(m2), q(mx), q(my)


def variance_extremes(coin: CoinOperator, initial_grid: NDArray, t: int = 40) -> tuple[float, float]:
    """Smallest and largest position variance after ``t`` steps over ``initial_grid``."""
    grid = np.asarray(initial_grid, dtype=np.complex128)
    grid = grid / np.linalg.norm(grid, axis=1, keepdims=True)
    m2, mx, my = evaluate_states(moment_forms(coin, t), grid)
    var = m2 - mx**2 - my**2
    return float(var.min()), float(var.max())


def extremal_spreading(
    coin: CoinOperator, initial_grid: NDArray | None = None, t: int = 40
) -> SpreadingReport:
    """
    Initial coin states in ``initial_grid`` giving the smallest and largest
    second moment after ``t`` steps. The exact extremes over all coin states
    (eigenvalues of the second-moment form) are reported alongside.
    """
    grid = default_initial_grid() if initial_grid is None else np.asarray(initial_grid, dtype=np.complex128)
    if grid.ndim != 2 or grid.shape[0] == 0 or grid.shape[1] != 4:
        raise ValueError("initial_grid must be a non-empty (n, 4) array")
    grid = grid / np.linalg.norm(grid, axis=1, keepdims=True)
    forms = moment_forms(coin, t)
    m2, mx, my = evaluate_states(forms, grid)
    var = m2 - mx**2 - my**2
    lo, hi = int(np.argmin(m2)), int(np.argmax(m2))
    ev = np.linalg.eigvalsh(forms[0])
    return SpreadingReport(
        t=t,
        min_second=float(m2[lo]),
        max_second=float(m2[hi]),
        argmin=grid[lo],
        argmax=grid[hi],
        min_variance=float(var[lo]),
        max_variance=float(var[hi]),
        mean_at_min=(float(mx[lo]), float(my[lo])),
        mean_at_max=(float(mx[hi]), float(my[hi])),
        exact_min_second=float(ev[0]),
        exact_max_second=float(ev[-1]),
    )
