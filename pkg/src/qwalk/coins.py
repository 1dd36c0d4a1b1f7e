"""
Coin operators for discrete-time coined quantum walks.

Every factory returns a :class:`CoinOperator` wrapping a read-only complex128
unitary together with the :class:`CoinSpec` it was realized from.

Basis conventions
-----------------
- degree 2: ``(R, L)``; the first component is the right-moving amplitude.
- degree 4 (square lattice): ``(LD, LU, RD, RU)``, i.e. the product basis
  ``(L, R) x (D, U)``, index ``2 * [right] + [up]``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "CoinFamily",
    "CoinSpec",
    "CoinOperator",
    "make_general_coin2",
    "make_hadamard_coin",
    "make_grover_coin",
    "make_dft_coin",
    "make_nonuniform_coin",
    "make_explicit_coin",
    "tensor_coin",
    "unitarity_error",
]

UNITARY_TOL = 1e-12


class CoinFamily(str, enum.Enum):
    GENERAL2D = "general2d"
    HADAMARD = "hadamard"
    GROVER = "grover"
    DFT = "dft"
    NON_UNIFORM_MIXING = "nonuniform"
    EXPLICIT = "explicit"


def unitarity_error(mat: NDArray) -> float:
    """Return ``max |C^dagger C - I|``."""
    mat = np.asarray(mat)
    return float(np.max(np.abs(mat.conj().T @ mat - np.eye(mat.shape[0]))))


@dataclass(frozen=True)
class CoinSpec:
    """
    Parameters describing a coin.

    ``rho``, ``theta`` and ``phi`` are only meaningful for two-dimensional
    coins of the general form; ``matrix`` is only used by ``EXPLICIT``.
    """

    family: CoinFamily
    degree: int = 2
    rho: float = 0.5
    theta: float = 0.0
    phi: float = 0.0
    matrix: NDArray[np.complex128] | None = field(default=None, compare=False, repr=False)

    @property
    def delta(self) -> float:
        """Coin phase ``(theta + phi) / 2``, which governs cycle degeneracies."""
        return 0.5 * (self.theta + self.phi)

    @property
    def is_two_dimensional_general(self) -> bool:
        return self.family in (
            CoinFamily.GENERAL2D,
            CoinFamily.HADAMARD,
            CoinFamily.NON_UNIFORM_MIXING,
        ) or (self.family is CoinFamily.DFT and self.degree == 2)

    def realize(self) -> "CoinOperator":
        if self.family is CoinFamily.GENERAL2D:
            return make_general_coin2(self.rho, self.theta, self.phi)
        if self.family is CoinFamily.HADAMARD:
            return make_hadamard_coin()
        if self.family is CoinFamily.GROVER:
            return make_grover_coin(self.degree)
        if self.family is CoinFamily.DFT:
            return make_dft_coin(self.degree)
        if self.family is CoinFamily.NON_UNIFORM_MIXING:
            return make_nonuniform_coin()
        if self.matrix is None:
            raise ValueError("EXPLICIT coin spec needs a matrix")
        return make_explicit_coin(self.matrix)

    def to_dict(self) -> dict:
        out = {
            "family": self.family.value,
            "degree": self.degree,
            "rho": self.rho,
            "theta": self.theta,
            "phi": self.phi,
            "delta": self.delta,
        }
        if self.matrix is not None:
            m = np.asarray(self.matrix)
            out["matrix"] = {"re": m.real.tolist(), "im": m.imag.tolist()}
        return out


@dataclass(frozen=True, eq=False)
class CoinOperator:
    """A d x d unitary acting on the coin register."""

    entries: NDArray[np.complex128]
    spec: CoinSpec

    def __post_init__(self) -> None:
        m = np.array(self.entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"coin must be square, got shape {m.shape}")
        err = unitarity_error(m)
        if err >= 1e-10:
            raise ValueError(f"coin is not unitary (max |C^dag C - I| = {err:.3e})")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def degree(self) -> int:
        return self.entries.shape[0]

    @property
    def is_unbiased(self) -> bool:
        return bool(np.all(np.abs(np.abs(self.entries) - self.degree ** -0.5) < UNITARY_TOL))

    @property
    def unitarity_error(self) -> float:
        return unitarity_error(self.entries)

    def adjoint(self) -> "CoinOperator":
        m = self.entries.conj().T
        return CoinOperator(m, CoinSpec(CoinFamily.EXPLICIT, self.degree, matrix=m))

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __repr__(self) -> str:
        return f"CoinOperator({self.spec.family.value}, d={self.degree})"


def make_general_coin2(rho: float, theta: float = 0.0, phi: float = 0.0) -> CoinOperator:
    """
    Most general 2 x 2 coin with real, nonnegative top-left entry.

    Parameters
    ----------
    rho : float
        Bias in ``[0, 1]``; ``rho = 1/2`` is a fair coin.
    theta, phi : float
        Phases in radians. Any real value is accepted.

    Returns
    -------
    CoinOperator
        ``[[sqrt(rho), sqrt(1-rho) e^{i theta}],
        [sqrt(1-rho) e^{i phi}, -sqrt(rho) e^{i (theta+phi)}]]``
    """
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho}")
    a = np.sqrt(rho)
    b = np.sqrt(1.0 - rho)
    m = np.array(
        [
            [a, b * np.exp(1j * theta)],
            [b * np.exp(1j * phi), -a * np.exp(1j * (theta + phi))],
        ],
        dtype=np.complex128,
    )
    return CoinOperator(m, CoinSpec(CoinFamily.GENERAL2D, 2, float(rho), float(theta), float(phi)))


def make_hadamard_coin() -> CoinOperator:
    m = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)
    return CoinOperator(m, CoinSpec(CoinFamily.HADAMARD, 2, 0.5, 0.0, 0.0))


def _check_degree(d: int) -> int:
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)):
        raise TypeError(f"coin degree must be an int, got {type(d).__name__}")
    if d < 2:
        raise ValueError(f"coin degree must be >= 2, got {d}")
    return int(d)


def make_grover_coin(d: int) -> CoinOperator:
    """Grover diffusion coin with entries ``2/d - delta_ij``."""
    d = _check_degree(d)
    m = np.full((d, d), 2.0 / d, dtype=np.complex128) - np.eye(d)
    return CoinOperator(m, CoinSpec(CoinFamily.GROVER, d))


def make_dft_coin(d: int) -> CoinOperator:
    """Discrete Fourier coin, entry ``(j, k) = d^{-1/2} exp(2 pi i j k / d)``."""
    d = _check_degree(d)
    j = np.arange(d)
    m = np.exp(2j * np.pi * np.outer(j, j) / d) / np.sqrt(d)
    # exact zeros/ones for the phases that are multiples of pi/2
    m = np.where(np.abs(m.real) < 1e-15, 1j * m.imag, m)
    m = np.where(np.abs(m.imag) < 1e-15, m.real + 0j, m)
    if d == 2:
        spec = CoinSpec(CoinFamily.DFT, 2, 0.5, 0.0, 0.0)
    else:
        spec = CoinSpec(CoinFamily.DFT, d)
    return CoinOperator(m, spec)


def make_nonuniform_coin() -> CoinOperator:
    """Unbiased coin with ``delta = -pi/2``: ``(1/sqrt 2) [[1, -i], [-i, 1]]``."""
    m = np.array([[1.0, -1j], [-1j, 1.0]], dtype=np.complex128) / np.sqrt(2.0)
    return CoinOperator(m, CoinSpec(CoinFamily.NON_UNIFORM_MIXING, 2, 0.5, -np.pi / 2, -np.pi / 2))


def make_explicit_coin(matrix) -> CoinOperator:
    m = np.array(matrix, dtype=np.complex128)
    m.setflags(write=False)
    return CoinOperator(m, CoinSpec(CoinFamily.EXPLICIT, m.shape[0], matrix=m))


def tensor_coin(first: CoinOperator, second: CoinOperator) -> CoinOperator:
    """Kronecker product ``first (x) second``; ``first`` acts on the leading label."""
    return make_explicit_coin(np.kron(first.entries, second.entries))
