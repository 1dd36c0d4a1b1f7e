"""Long-time average distributions of the Hadamard walk on small cycles."""

import argparse

import numpy as np

from qwalk import analysis, coins, graphs, spectral, walk


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=16)
    ap.add_argument("--T", type=int, default=10_000, help="steps in the empirical average")
    args = ap.parse_args()
    h = coins.make_hadamard_coin()
    init = walk.InitialCoinState()
    np.set_printoptions(precision=4, suppress=True, linewidth=120)
    for N in range(3, args.n_max + 1):
        g = graphs.make_cycle(N)
        lim = spectral.limiting_distribution(N, h, init, g)
        avg = spectral.time_averaged_distribution(walk.make_initial_state(g), h, g, args.T)
        uni = analysis.uniform_distribution(N)
        print(
            f"N={N:>2} TV(limit, uniform)={analysis.total_variation(lim, uni):.4f} "
            f"TV(limit, average)={analysis.total_variation(lim, avg):.1e}"
        )
        print("     ", lim.probs)


if __name__ == "__main__":
    main()
