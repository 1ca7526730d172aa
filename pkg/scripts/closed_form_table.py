"""Closed forms of the infinite power-law modulus vs the summed series.

For each implemented exponent pair, evaluates the closed form and the
rigorously tail-bounded series at a few points on the positive real axis
and prints the achieved agreement alongside the series bound.

Run:  python scripts/closed_form_table.py [--tol 1e-9]
"""

import argparse

import numpy as np

from gmblove import modulus_closed, modulus_series, pole_location

PAIRS = [(0, 2), (2, 0), (1, 2), (2, 1), (2, 2), (3, 3), (0, 3), (0, 4), (4, 0)]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--tol", type=float, default=1e-9, help="series tail bound")
    args = parser.parse_args()

    print(f"{'p':>2} {'q':>2} {'z':>10}  {'closed form':>18}  {'|closed-series|':>16}  {'bound':>10}")
    for p, q in PAIRS:
        for z in np.geomspace(0.1, 100.0, 4):
            closed = modulus_closed(z, p, q)
            series, bound = modulus_series(z, p, q, tol=args.tol)
            diff = abs(closed - series)
            print(
                f"{p:>2} {q:>2} {z:>10.4f}  {closed.real:>18.12f}  {diff:>16.3e}  {bound:>10.2e}"
            )
        print(f"      first poles: {[pole_location(p, q, n) for n in (1, 2, 3)]}")


if __name__ == "__main__":
    main()
