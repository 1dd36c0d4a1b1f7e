"""Periods of lattice walks on tori, Klein bottles and twisted-twice surfaces."""

import argparse

from qwalk import coins, graphs, spectral, walk


def period(W, H, boundary, coin, init, omega_max):
    g = graphs.make_lattice2d(W, H, boundary)
    return spectral.find_period_numeric(walk.make_initial_state(g, None, init), coin, g, omega_max)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--omega-max", type=int, default=3000)
    args = ap.parse_args()
    h = coins.make_hadamard_coin()
    setups = {
        "H(x)H": (coins.tensor_coin(h, h), walk.SYMMETRIC_LATTICE_STATE),
        "Grover": (coins.make_grover_coin(4), walk.GROVER_RING_STATE),
        "DFT": (coins.make_dft_coin(4), walk.DFT_RING_STATE),
    }
    sizes = [(2, 2), (2, 4), (4, 2), (4, 4), (4, 8), (8, 4), (8, 8)]
    print(f"{'coin':>7} {'surface':>11} " + " ".join(f"{w}x{h:<4}" for w, h in sizes))
    for name, (coin, init) in setups.items():
        for boundary in ("torus", "klein", "projective"):
            cells = [period(W, H, boundary, coin, init, args.omega_max) for W, H in sizes]
            print(f"{name:>7} {boundary:>11} " + " ".join(f"{str(c):<6}" for c in cells))
    print("(x is the twisted side for klein; None = no recurrence within", args.omega_max, "steps)")


if __name__ == "__main__":
    main()
