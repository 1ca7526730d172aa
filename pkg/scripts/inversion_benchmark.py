"""Post-Widder vs Heaviside-expansion inversion across network sizes.

For random problems of increasing element count, measures the wall-clock
of both routes over a log time grid spanning the full relaxation band and
the worst relative deviation between them (where the response has not
decayed below 1e-6 of its initial value).

Run:  python scripts/inversion_benchmark.py [--seed 42] [--nmax 24]
"""

import argparse
import time

import numpy as np

from gmblove import PwConfig, impulse_response, pw_invert, random_love_problem, relaxation_spectrum


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--nmax", type=int, default=24, help="Post-Widder depth")
    parser.add_argument("--points", type=int, default=10)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    config = PwConfig(n_max=args.nmax)
    print(f"Post-Widder depth {config.n_max}, {config.digits} digits, rho acceleration")
    print(f"{'N':>3}  {'heaviside':>11}  {'post-widder':>11}  {'max rel dev':>12}")
    for n in (1, 2, 4, 8, 12):
        problem = random_love_problem(rng, n)
        taus = [e.tau for e in problem.gmb.elements]
        spread = 1.0 + problem.lam_sq * float(problem.mu_primes.sum())
        grid = np.geomspace(0.1 * min(taus), 10.0 * spread * max(taus), args.points)

        t0 = time.perf_counter()
        sol = relaxation_spectrum(problem)
        reference = np.array([impulse_response(sol, t)[0] for t in grid])
        hv_time = time.perf_counter() - t0

        t0 = time.perf_counter()
        values = np.array([pw_invert(problem, float(t), config).value for t in grid])
        pw_time = time.perf_counter() - t0

        floor = 1e-6 * abs(float(np.sum(sol.amplitudes)))
        mask = np.abs(reference) > floor
        dev = float(np.max(np.abs(values[mask] - reference[mask]) / np.abs(reference[mask])))
        print(f"{n:>3}  {hv_time:>9.3f} s  {pw_time:>9.3f} s  {dev:>12.3e}")


if __name__ == "__main__":
    main()
