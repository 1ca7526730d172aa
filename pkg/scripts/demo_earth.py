"""Walk-through on an Earth-like sphere: spectrum and time-domain response.

Builds the PREM-like homogeneous sphere (a = 6371 km, g = 9.81 m/s^2,
mu_e = 200 GPa), attaches a two-element Maxwell network (a Burgers-type
material expressed as two elements in parallel), prints the relaxation
spectrum at degree 2, and cross-checks the two inversion routes at a few
times.

Run:  python scripts/demo_earth.py
"""

import numpy as np

from gmblove import (
    GmbModel,
    MaxwellElement,
    LoveProblem,
    PwConfig,
    earth_like_sphere,
    heaviside_load_response,
    impulse_response,
    lambda_squared,
    pw_invert,
    relaxation_spectrum,
)

YEAR = 365.25 * 86400.0


def main():
    sphere = earth_like_sphere(mu_e=200e9)
    print("homogeneous sphere")
    print(f"  rho             = {sphere.rho:.2f} kg/m^3")
    print(f"  surface gravity = {sphere.surface_gravity:.4f} m/s^2")
    print(f"  mu_e/(rho g a)  = {sphere.stress_ratio:.4f}")
    for degree in (2, 10, 100):
        print(f"  lambda^2(l={degree:3d}) = {lambda_squared(sphere, degree):.4f}")

    # transient (weak, fast) + steady (stiff, slow) element pair
    gmb = GmbModel(
        elements=(
            MaxwellElement(mu=40e9, eta=40e9 * 30.0 * YEAR),
            MaxwellElement(mu=120e9, eta=120e9 * 3000.0 * YEAR),
        )
    )
    problem = LoveProblem(sphere=sphere, degree=2, fluid_limit=1.0, gmb=gmb)
    sol = relaxation_spectrum(problem)
    print("\nrelaxation spectrum (degree 2, normalized)")
    print(f"  elastic amplitude L_e = {sol.elastic_amp:.6f}")
    for mode in sol.modes:
        print(
            f"  rate = {mode.rate:.6e} 1/s  (decay time {-1.0 / mode.rate / YEAR:9.1f} yr)"
            f"  amplitude = {mode.amplitude:.6e}"
        )
    fluid = sol.elastic_amp + float(np.sum(sol.amplitudes / -sol.rates))
    print(f"  sum rule L_e + sum L_n/(-s_n) = {fluid:.12f} (fluid limit 1)")

    config = PwConfig()
    print("\nstep-load response: Heaviside expansion vs Post-Widder")
    print(f"  {'t [yr]':>10}  {'heaviside':>14}  {'post-widder':>14}  {'|rel diff|':>10}")
    for t_years in (1.0, 30.0, 300.0, 3000.0, 30000.0):
        t = t_years * YEAR
        hv = heaviside_load_response(sol, t)
        pw = pw_invert(problem, t, config, kind="step").value
        print(f"  {t_years:10.1f}  {hv:14.8f}  {pw:14.8f}  {abs(pw - hv) / hv:10.2e}")

    regular, elastic = impulse_response(sol, 100.0 * YEAR)
    print(f"\nimpulse response at t = 100 yr: regular = {regular:.6e}, "
          f"delta amplitude = {elastic:.6f}")


if __name__ == "__main__":
    main()
