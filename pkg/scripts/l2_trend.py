"""Truncations of a unit vector in L^2(0, 1) whose normalized determinant vanishes in the limit.

Prints the finite-n determinant against the multiplication operator, which
decays slowly (like a power of 1/log n) rather than reaching zero.
"""

import argparse

import numpy as np

from fsdlab.levi import l2_log_singular_state


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-power", type=int, default=16, help="largest n is 2**max_power")
    args = ap.parse_args()

    print(f"{'n':>8} {'determinant':>13} {'ratio to previous':>18}")
    ns = [2**k for k in range(4, args.max_power + 1)]
    vals = [l2_log_singular_state(n)[1] for n in ns]
    for i, (n, d) in enumerate(zip(ns, vals)):
        ratio = "" if i == 0 else f"{d / vals[i - 1]:18.4f}"
        print(f"{n:8d} {d:13.6e} {ratio}")
    # a power law in log n shows up as a straight line against log log n
    slope = np.polyfit(np.log(np.log(ns)), np.log(vals), 1)[0]
    print(f"\nfitted exponent of log n: {slope:.4f}")


if __name__ == "__main__":
    main()
