"""
Fourier-space solution of the two-state walk on an N-cycle.

In momentum space each mode ``k`` evolves under the 2 x 2 matrix
``C_k = diag(e^{i kappa}, e^{-i kappa}) C`` with ``kappa = 2 pi k / N``.
Its eigenvalues are ``lambda_k^+ = e^{i delta} e^{i omega_k}`` and
``lambda_k^- = -e^{i delta} e^{-i omega_k}``, where
``sin omega_k = sqrt(rho) sin(kappa - delta)`` and ``omega_k`` is taken in
``[-pi/2, pi/2]``.

Position-space conventions: ``psi~(k) = N^{-1/2} sum_x psi(x) e^{2 pi i k x / N}``
with ``x`` measured from the start vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from numpy.typing import NDArray

from .analysis import Distribution, position_distribution
from .coins import CoinOperator, CoinSpec
from .graphs import WalkGraph, make_cycle
from .walk import CoinField, InitialCoinState, Propagator, WalkState

__all__ = [
    "SpectralDecomposition",
    "DegeneracySet",
    "PeriodCertificate",
    "mode_matrix",
    "cycle_eigensystem",
    "evolve_fourier",
    "degeneracy_condition",
    "limiting_distribution",
    "limiting_distribution_split",
    "time_averaged_distribution",
    "find_period_numeric",
    "solve_period_condition",
    "KNOWN_PERIODS",
]

DEGENERACY_TOL = 1e-10
FIDELITY_TOL = 1e-9


def _coin_params(coin: CoinSpec | CoinOperator) -> tuple[float, float, float]:
    spec = coin.spec if isinstance(coin, CoinOperator) else coin
    if not spec.is_two_dimensional_general:
        raise ValueError(f"cycle spectra need a general two-dimensional coin, got {spec.family.value}")
    return spec.rho, spec.theta, spec.phi


def mode_matrix(N: int, k: int | NDArray, coin: CoinSpec | CoinOperator) -> NDArray[np.complex128]:
    """Momentum-space step matrix ``C_k^(N)``; vectorized over ``k``."""
    rho, theta, phi = _coin_params(coin)
    kap = 2 * np.pi * np.asarray(k, dtype=float) / N
    a, b = np.sqrt(rho), np.sqrt(1 - rho)
    out = np.empty(kap.shape + (2, 2), dtype=np.complex128)
    out[..., 0, 0] = a * np.exp(1j * kap)
    out[..., 0, 1] = b * np.exp(1j * (kap + theta))
    out[..., 1, 0] = b * np.exp(1j * (-kap + phi))
    out[..., 1, 1] = -a * np.exp(1j * (-kap + theta + phi))
    return out


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """
    Per-mode eigensystem of the cycle walk.

    Arrays are indexed ``[k, branch]`` with branch 0 for ``lambda^+`` and 1
    for ``lambda^-``; ``eigenvectors[k, b]`` is a unit 2-vector.
    """

    N: int
    coin: CoinSpec
    omega: NDArray[np.float64]
    eigenvalues: NDArray[np.complex128]
    eigenvectors: NDArray[np.complex128]
    norms: NDArray[np.float64]

    @property
    def delta(self) -> float:
        return self.coin.delta

    def reconstruct(self) -> NDArray[np.complex128]:
        """``sum_b lambda_b |xi_b><xi_b|`` for every mode."""
        v = self.eigenvectors
        return np.einsum("kb,kbi,kbj->kij", self.eigenvalues, v, v.conj())

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "coin": self.coin.to_dict(),
            "modes": [
                {
                    "k": k,
                    "omega": float(self.omega[k]),
                    "lambda_plus": [float(self.eigenvalues[k, 0].real), float(self.eigenvalues[k, 0].imag)],
                    "lambda_minus": [float(self.eigenvalues[k, 1].real), float(self.eigenvalues[k, 1].imag)],
                    "xi_plus": [[float(c.real), float(c.imag)] for c in self.eigenvectors[k, 0]],
                    "xi_minus": [[float(c.real), float(c.imag)] for c in self.eigenvectors[k, 1]],
                    "n_plus": float(self.norms[k, 0]),
                    "n_minus": float(self.norms[k, 1]),
                }
                for k in range(self.N)
            ],
        }


def cycle_eigensystem(N: int, coin: CoinSpec | CoinOperator) -> SpectralDecomposition:
    """Closed-form eigenvalues and eigenvectors of every ``C_k^(N)``."""
    spec = coin.spec if isinstance(coin, CoinOperator) else coin
    rho, theta, phi = _coin_params(spec)
    delta = 0.5 * (theta + phi)
    k = np.arange(N)
    kap = 2 * np.pi * k / N
    # arcsin(sqrt(rho) sin(kappa - delta)), written to stay accurate near +-pi/2
    cos_part = np.sqrt((1.0 - rho) + rho * np.cos(kap - delta) ** 2)
    omega = np.arctan2(np.sqrt(rho) * np.sin(kap - delta), cos_part)
    lam = np.stack(
        [np.exp(1j * (delta + omega)), -np.exp(1j * (delta - omega))], axis=1
    )
    if rho < 1.0:
        # xi ~ (e^{i kappa}, e^{-i theta} (lambda - sqrt(rho) e^{i kappa}) / sqrt(1 - rho)).
        # With c = cos(kappa - delta), p = cos(omega) + sqrt(rho) c and
        # q = cos(omega) - sqrt(rho) c satisfy p q = 1 - rho, and
        # lambda^+ - sqrt(rho) e^{i kappa} = e^{i delta} q,
        # lambda^- - sqrt(rho) e^{i kappa} = -e^{i delta} p.
        # The larger of p, q is computed directly and the other as (1 - rho) / it.
        b = np.sqrt(1.0 - rho)
        c = np.cos(kap - delta)
        big = cos_part + np.sqrt(rho) * np.abs(c)
        small = (1.0 - rho) / big
        p = np.where(c >= 0, big, small)
        q = np.where(c >= 0, small, big)
        ph = np.exp(1j * (delta - theta))
        second = np.stack([ph * q, -ph * p], axis=1)
        first = b * np.broadcast_to(np.exp(1j * kap)[:, None], lam.shape)
        vec = np.stack([first, second], axis=-1)
        scaled = np.linalg.norm(vec, axis=-1)
        vec = vec / scaled[..., None]
        norms = scaled / b
    else:
        # diagonal coin: the basis vectors carry e^{i kappa} and -e^{i (theta+phi-kappa)}
        vec = np.zeros((N, 2, 2), dtype=np.complex128)
        vec[:, 0, 0] = 1.0
        vec[:, 1, 1] = 1.0
        diag = np.stack([np.exp(1j * kap), -np.exp(1j * (theta + phi - kap))], axis=1)
        lam = diag
        omega = np.angle(diag[:, 0] * np.exp(-1j * delta))
        norms = np.ones((N, 2))
    return SpectralDecomposition(N, spec, omega, lam, vec, norms)


def _fourier_amplitudes(
    N: int, coin: CoinSpec | CoinOperator, initial: InitialCoinState, t: int
) -> NDArray[np.complex128]:
    """Amplitudes ``psi[a, x]``, ``x = 0..N-1`` relative to the start."""
    sd = cycle_eigensystem(N, coin)
    c0 = initial.vector(2) / np.sqrt(N)
    # coefficient of each eigenvector: lambda^t <xi|psi~(k, 0)>
    coef = sd.eigenvalues**t * np.einsum("kbi,i->kb", sd.eigenvectors.conj(), c0)
    psik = np.einsum("kb,kbi->ik", coef, sd.eigenvectors)
    x = np.arange(N)
    kernel = np.exp(-2j * np.pi * np.outer(np.arange(N), x) / N) / np.sqrt(N)
    return psik @ kernel


def evolve_fourier(
    N: int,
    coin: CoinSpec | CoinOperator,
    initial: InitialCoinState,
    t: int,
    graph: WalkGraph | None = None,
) -> WalkState:
    """
    State after ``t`` steps from the start vertex, computed mode by mode.

    ``graph`` may be an N-vertex cycle or line window; the result is placed
    relative to its origin. Defaults to ``make_cycle(N)``.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    g = make_cycle(N) if graph is None else graph
    if g.kind not in ("cycle", "line") or g.num_vertices != N:
        raise ValueError("evolve_fourier supports N-vertex cycles and line windows only")
    amp = _fourier_amplitudes(N, coin, initial, t)
    amp = np.roll(amp, g.origin, axis=1)
    return WalkState(amp, g, t)


@dataclass(frozen=True)
class DegeneracySet:
    """
    Non-trivial coincidences ``lambda_k^b = lambda_j^c`` with ``k != j``.

    ``pairs`` holds ``(k, j, b, c)`` with ``k < j`` and branches 0 (+) / 1 (-).
    """

    N: int
    delta: float
    pairs: tuple[tuple[int, int, int, int], ...]
    Phi: float

    @property
    def is_empty(self) -> bool:
        return not self.pairs

    def to_dict(self) -> dict:
        return {"N": self.N, "delta": self.delta, "Phi": self.Phi, "pairs": [list(p) for p in self.pairs]}


def _rational_pi_multiple(x: float, max_den: int) -> Fraction | None:
    """``x / pi`` as a fraction with denominator <= ``max_den``, if it is one."""
    f = Fraction(x / np.pi).limit_denominator(max_den)
    return f if abs(float(f) * np.pi - x) < 1e-9 else None


def degeneracy_condition(N: int, coin: CoinSpec | CoinOperator) -> DegeneracySet:
    """
    All non-trivially degenerate eigenvalue pairs of the cycle walk.

    When ``delta`` is not a rational multiple of pi (denominator up to 4N)
    the set is empty; otherwise pairs are found by direct comparison of
    eigenvalues and must satisfy ``k + j = Phi (mod N)``.
    """
    sd = cycle_eigensystem(N, coin)
    delta = sd.delta
    Phi = N / np.pi * (delta + np.pi / 2)
    if _rational_pi_multiple(delta, 4 * N) is None:
        return DegeneracySet(N, delta, (), Phi)
    lam = sd.eigenvalues
    pairs = []
    for k in range(N):
        for j in range(k + 1, N):
            for b in range(2):
                for c in range(2):
                    if abs(lam[k, b] - lam[j, c]) < DEGENERACY_TOL:
                        pairs.append((k, j, b, c))
    return DegeneracySet(N, delta, tuple(pairs), Phi)


def _position_eigenvectors(sd: SpectralDecomposition) -> NDArray[np.complex128]:
    """``phi[k, b, a, x] = xi_k^b[a] chi_k(x)`` with ``chi_k(x) = e^{-2 pi i k x/N}/sqrt N``."""
    N = sd.N
    chi = np.exp(-2j * np.pi * np.outer(np.arange(N), np.arange(N)) / N) / np.sqrt(N)
    return np.einsum("kba,kx->kbax", sd.eigenvectors, chi)


def _eigen_groups(values: NDArray[np.complex128], tol: float) -> list[list[int]]:
    flat = values.ravel()
    order = np.argsort(np.angle(flat))
    groups: list[list[int]] = []
    used = np.zeros(flat.size, dtype=bool)
    for i in order:
        if used[i]:
            continue
        members = np.nonzero((np.abs(flat - flat[i]) < tol) & ~used)[0]
        used[members] = True
        groups.append(sorted(int(m) for m in members))
    return groups


def limiting_distribution_split(
    N: int, coin: CoinSpec | CoinOperator, initial: InitialCoinState
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    The long-time average split into its diagonal part and the cross terms.

    The diagonal part (``k = j``, equal branches) is exactly ``1/N`` per site;
    the cross terms come from degenerate pairs of distinct eigenvectors.
    Positions are relative to the start vertex.
    """
    sd = cycle_eigensystem(N, coin)
    phi = _position_eigenvectors(sd).reshape(2 * N, 2, N)
    psi0 = np.zeros((2, N), dtype=np.complex128)
    psi0[:, 0] = initial.vector(2)
    c = np.einsum("vax,ax->v", phi.conj(), psi0)
    terms = c[:, None, None] * phi  # projection coefficients times eigenvectors
    diag = np.einsum("vax->x", np.abs(terms) ** 2)
    total = np.zeros(N)
    if _rational_pi_multiple(sd.delta, 4 * N) is None:
        groups = [[v] for v in range(2 * N)]
    else:
        groups = _eigen_groups(sd.eigenvalues, DEGENERACY_TOL)
    for g in groups:
        total += np.sum(np.abs(terms[g].sum(axis=0)) ** 2, axis=0)
    return diag, total - diag


def limiting_distribution(
    N: int,
    coin: CoinSpec | CoinOperator,
    initial: InitialCoinState,
    graph: WalkGraph | None = None,
) -> Distribution:
    """Analytic ``T -> infinity`` limit of the time-averaged distribution."""
    diag, cross = limiting_distribution_split(N, coin, initial)
    g = make_cycle(N) if graph is None else graph
    p = np.roll(diag + cross, g.origin)
    return Distribution(p, g.coords, g.origin)


def time_averaged_distribution(state0: WalkState, coin: CoinField, graph: WalkGraph | None, T: int) -> Distribution:
    """``(1/T) sum_{t < T} P(x, t)``."""
    if T < 1:
        raise ValueError("T must be >= 1")
    g = state0.graph if graph is None else graph
    prop = Propagator(g, coin)
    psi = state0.amplitudes
    acc = np.zeros(g.num_vertices)
    for t in range(T):
        acc += np.sum(np.abs(psi) ** 2, axis=0)
        if t + 1 < T:
            psi = prop.apply(psi)
    return Distribution(acc / T, g.coords, g.origin)


def find_period_numeric(
    state0: WalkState, coin: CoinField, graph: WalkGraph | None, omega_max: int
) -> int | None:
    """Smallest ``t <= omega_max`` with ``|<psi_0|psi_t>| > 1 - 1e-9``, or None."""
    if omega_max < 1:
        raise ValueError("omega_max must be >= 1")
    g = state0.graph if graph is None else graph
    prop = Propagator(g, coin)
    psi0 = state0.amplitudes
    psi = psi0
    for t in range(1, omega_max + 1):
        psi = prop.apply(psi)
        if abs(np.vdot(psi0, psi)) > 1 - FIDELITY_TOL:
            return t
    return None


@dataclass(frozen=True)
class PeriodCertificate:
    """
    Coin making every cycle eigenvalue an ``Omega``-th root of unity.

    ``delta = m pi / Omega - pi / 2`` and, for each ``k``,
    ``cos(pi j_k / Omega) = sqrt(rho) cos(2 pi k / N - pi m / Omega)``.
    When no mode constrains ``rho`` (all right-hand cosines vanish) any bias
    works; ``rho_free`` is set and ``rho`` is reported as 1/2.
    """

    N: int
    Omega: int
    rho: float
    delta: float
    m: int
    j_values: tuple[int, ...]
    rho_free: bool = False

    def coin_spec(self) -> CoinSpec:
        from .coins import CoinFamily

        return CoinSpec(CoinFamily.GENERAL2D, 2, self.rho, self.delta, self.delta)

    def residual(self) -> float:
        k = np.arange(self.N)
        lhs = np.cos(np.pi * np.asarray(self.j_values) / self.Omega)
        rhs = np.sqrt(self.rho) * np.cos(2 * np.pi * k / self.N - np.pi * self.m / self.Omega)
        return float(np.max(np.abs(lhs - rhs)))

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "Omega": self.Omega,
            "rho": self.rho,
            "delta": self.delta,
            "delta_over_pi": self.delta / np.pi,
            "m": self.m,
            "j_values": list(self.j_values),
            "rho_free": self.rho_free,
        }


def _match_j(values: NDArray, Omega: int, parity: int, tol: float) -> NDArray:
    """
    Integers ``j`` in ``[0, Omega]`` with ``cos(pi j/Omega) = values``.

    ``values`` has shape ``(..., N)``; returns ``(j, ok)`` where ``ok`` marks the
    rows for which every entry matched with the right parity.
    """
    jf = np.arccos(np.clip(values, -1, 1)) * Omega / np.pi
    j = np.rint(jf).astype(int)
    ok = np.abs(np.cos(np.pi * j / Omega) - values) < tol
    ok &= (j - parity) % 2 == 0
    ok &= np.abs(values) <= 1 + tol
    return j, np.all(ok, axis=-1)


def solve_period_condition(N: int, omega_max: int, tol: float = 1e-9) -> list[PeriodCertificate]:
    """
    Coins ``(rho, delta)`` giving an exactly periodic walk on the N-cycle.

    For each ``Omega <= omega_max`` and ``m in [0, 2 Omega)``, candidate
    biases come from the first mode whose right-hand cosine is non-zero;
    each candidate is then checked against every mode. Only the smallest
    ``Omega`` is kept for a given ``(rho, delta mod 2 pi)``; ``rho = 0`` and
    ``rho = 1`` are excluded.
    """
    if omega_max < 2:
        raise ValueError("omega_max must be >= 2")
    k = np.arange(N)
    found: dict[tuple, PeriodCertificate] = {}
    two_pi = round(2 * np.pi, 9)
    for Omega in range(1, omega_max + 1):
        jgrid = np.arange(Omega + 1)
        for m in range(2 * Omega):
            c = np.cos(2 * np.pi * k / N - np.pi * m / Omega)
            parity = m % 2
            nz = np.nonzero(np.abs(c) > tol)[0]
            if nz.size == 0:
                rhos = np.array([0.5])
                free = True
            else:
                sr = np.cos(np.pi * jgrid[(jgrid - parity) % 2 == 0] / Omega) / c[nz[0]]
                sr = np.unique(np.round(sr[(sr > tol) & (sr < 1 - tol)], 12))
                rhos = sr * sr
                free = False
            if rhos.size == 0:
                continue
            j, ok = _match_j(np.sqrt(rhos)[:, None] * c[None, :], Omega, parity, tol)
            if not ok.any():
                continue
            delta = m * np.pi / Omega - np.pi / 2
            phase = round(float(np.mod(delta, 2 * np.pi)), 9) % two_pi
            for idx in np.nonzero(ok)[0]:
                rho = float(rhos[idx])
                key = (round(rho, 9), free, phase)
                if key not in found:
                    found[key] = PeriodCertificate(N, Omega, rho, delta, m, tuple(int(v) for v in j[idx]), free)
    return sorted(found.values(), key=lambda c: (c.Omega, c.m, c.rho))


_RHO_5 = (math.sin(math.pi / 6) / math.sin(math.pi / 5)) ** 2

#: Known periodic cycle walks: N -> (period, rho, delta).
KNOWN_PERIODS: dict[int, tuple[int, float, float]] = {
    2: (2, 0.5, 0.0),
    3: (12, 1 / 3, math.pi / 3),
    4: (8, 0.5, 0.0),
    5: (60, _RHO_5, 3 * math.pi / 5),
    6: (12, 1 / 3, 0.0),
    8: (24, 0.5, 0.0),
    10: (60, _RHO_5, 0.0),
}
