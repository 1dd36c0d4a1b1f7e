"""Discrete-time coined quantum walks: coins, graphs, spectra and statistics."""

from .analysis import (
    Distribution,
    LatticeMoments,
    MomentReport,
    classical_walk_distribution,
    column_distribution,
    lattice_moments,
    moments,
    position_distribution,
    total_variation,
    uniform_distribution,
)
from .coins import (
    CoinFamily,
    CoinOperator,
    CoinSpec,
    make_dft_coin,
    make_explicit_coin,
    make_general_coin2,
    make_grover_coin,
    make_hadamard_coin,
    make_nonuniform_coin,
    tensor_coin,
)
from .graphs import (
    BoundaryMode,
    GraphError,
    WalkGraph,
    make_cycle,
    make_glued_trees,
    make_hypercube,
    make_lattice2d,
    make_line,
    make_open_lattice,
)
from .walk import (
    DFT_RING_STATE,
    GROVER_RING_STATE,
    SYMMETRIC_LATTICE_STATE,
    InitialCoinState,
    Propagator,
    ShapeError,
    WalkState,
    evolve,
    evolve_adjoint,
    lattice_coin_state,
    make_initial_state,
    step,
    step_adjoint,
    trajectory,
)

__version__ = "0.1.0"
