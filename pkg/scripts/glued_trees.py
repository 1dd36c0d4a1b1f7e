"""Traversal of the glued binary trees by coined walks and by a classical random walk."""

import argparse
import math

import numpy as np

from qwalk import analysis, coins, graphs, walk


def exit_series(g, field, steps):
    st0 = walk.make_initial_state(g, None, np.ones(2) / math.sqrt(2))
    return np.array([analysis.column_distribution(s).probs for s in walk.trajectory(st0, field, steps)])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=7)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--steps", type=int, default=120)
    args = ap.parse_args()
    grover = {d: coins.make_grover_coin(d) for d in (2, 3)}
    dft = {d: coins.make_dft_coin(d) for d in (2, 3)}

    peaks = []
    for seed in range(args.seeds):
        series = exit_series(graphs.make_glued_trees(args.depth, seed), grover, 40)
        t = int(np.argmax(series[:, -1]))
        peaks.append((seed, t, series[t, -1]))
    for seed, t, p in peaks:
        print(f"Grover, seed {seed}: exit probability peaks at t={t} with {p:.6f}")

    g = graphs.make_glued_trees(args.depth, 0)
    # alternative root coins: a phase flip instead of the swap
    for name, root in [("swap", coins.make_grover_coin(2)), ("hadamard", coins.make_hadamard_coin()), ("identity", coins.make_explicit_coin(np.eye(2)))]:
        series = exit_series(g, {2: root, 3: grover[3]}, 40)
        t = int(np.argmax(series[:, -1]))
        print(f"root coin {name:>8}: peak exit {series[t, -1]:.4f} at t={t}")

    q = exit_series(g, dft, args.steps)[-1]
    c = analysis.classical_walk_distribution(g, args.steps).probs
    print(f"\nt={args.steps}, within 3 columns of the entrance: DFT {q[:4].sum():.4f}, classical {c[:4].sum():.4f}")
    print("DFT columns      ", np.round(q, 3))
    print("classical columns", np.round(c, 3))


if __name__ == "__main__":
    main()
