"""Classify the 640 unbiased symmetric four-dimensional coins and compare their spreading."""

import argparse
import time

import numpy as np

from qwalk import coin_classes, coins


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t-probe", type=int, default=20)
    ap.add_argument("--steps", type=int, default=40)
    ap.add_argument("--samples", type=int, default=1000)
    args = ap.parse_args()
    t0 = time.perf_counter()
    all_coins = coin_classes.enumerate_unbiased_coins4()
    classes = coin_classes.classify_coins(all_coins, args.t_probe)
    print(f"{len(all_coins)} coins, {len(classes)} classes in {time.perf_counter() - t0:.1f}s")
    h = coins.make_hadamard_coin()
    named = {"H(x)H": coins.tensor_coin(h, h), "Grover": coins.make_grover_coin(4), "DFT": coins.make_dft_coin(4)}
    tags = {coin_classes.class_index(c, classes): k for k, c in named.items()}
    grid = coin_classes.default_initial_grid(args.samples)
    print(f"{'class':>5} {'size':>5} {'min var':>9} {'max var':>9} {'min <r2>':>9} {'max <r2>':>9}  named")
    for cl in classes:
        rep = named.get(tags.get(cl.class_id), cl.representative)
        lo, hi = coin_classes.variance_extremes(rep, grid, args.steps)
        r = coin_classes.extremal_spreading(rep, grid, args.steps)
        print(
            f"{cl.class_id:>5} {cl.members:>5} {lo:9.2f} {hi:9.2f} "
            f"{r.exact_min_second:9.2f} {r.exact_max_second:9.2f}  {tags.get(cl.class_id, '')}"
        )
    g = coin_classes.extremal_spreading(named["Grover"], grid, args.steps)
    print("Grover fastest state", np.round(g.argmax, 4))
    print("Grover slowest state", np.round(g.argmin, 4))


if __name__ == "__main__":
    main()
