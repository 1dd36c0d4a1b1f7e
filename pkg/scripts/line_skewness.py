"""First moment and skewness of the Hadamard walk on the line against the initial coin state."""

import argparse
import math

import numpy as np

from qwalk import analysis, coins, graphs, walk


def stats(eta, alpha, t):
    g = graphs.make_line(t)
    st = walk.evolve(walk.make_initial_state(g, None, walk.InitialCoinState(eta, alpha)), coins.make_hadamard_coin(), g, t)
    return analysis.moments(analysis.position_distribution(st))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=100)
    ap.add_argument("--points", type=int, default=9)
    args = ap.parse_args()
    t = args.steps
    eta_star = math.cos(math.pi / 8) ** 2
    print(f"t={t}; eta* = cos^2(pi/8) = {eta_star:.5f}")
    print(f"{'eta':>7} {'alpha/pi':>9} {'mean':>10} {'std':>8} {'skewness':>9}")
    for eta in sorted(set(np.linspace(0, 1, args.points).tolist() + [eta_star])):
        for alpha in (0.0, math.pi / 2, math.pi):
            m = stats(eta, alpha, t)
            print(f"{eta:7.4f} {alpha / math.pi:9.2f} {m.mean:10.4f} {m.std_dev:8.3f} {m.skewness:9.4f}")


if __name__ == "__main__":
    main()
