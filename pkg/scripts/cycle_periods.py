"""Periodic walks on the N-cycle: numeric periods and the exact period condition."""

import argparse
import math
import time

from qwalk import coins, graphs, spectral, walk


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=10)
    ap.add_argument("--omega-max", type=int, default=120)
    args = ap.parse_args()

    print(f"{'N':>3} {'rho':>8} {'delta/pi':>9} {'period':>7}")
    for N, (omega, rho, delta) in spectral.KNOWN_PERIODS.items():
        g = graphs.make_cycle(N)
        c = coins.make_general_coin2(rho, delta, delta)
        found = spectral.find_period_numeric(walk.make_initial_state(g), c, g, 10_000)
        print(f"{N:>3} {rho:8.5f} {delta / math.pi:9.4f} {found!s:>7}  (expected {omega})")

    print(f"\nexact solutions with period <= {args.omega_max}")
    for N in range(2, args.n_max + 1):
        t0 = time.perf_counter()
        certs = spectral.solve_period_condition(N, args.omega_max)
        fixed = [c for c in certs if not c.rho_free]
        smallest = min((c.Omega for c in certs), default=None)
        print(
            f"N={N:>2}: {len(certs):6d} coins ({len(certs) - len(fixed)} with free bias), "
            f"smallest period {smallest}, {time.perf_counter() - t0:.2f}s"
        )
        for c in sorted(fixed, key=lambda c: c.Omega)[:3]:
            print(f"        Omega={c.Omega:<4d} rho={c.rho:.6f} delta/pi={c.delta / math.pi:+.5f}")


if __name__ == "__main__":
    main()
