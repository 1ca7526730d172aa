"""Command-line front end: model ingestion, grid sweeps, inversion, comparison.

Exit codes: 0 success, 2 parse/schema failure, 3 domain failure (poles,
unsupported exponents, divergent series, bad grids), 4 convergence failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import statistics
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import powerlaw as plaw_mod
from .errors import ConvergenceError, DomainError, GmbLoveError, PoleError, SchemaError
from .postwidder import PwConfig, pw_invert
from .rheology import complex_modulus, load_gmb
from .love import (
    heaviside_load_response,
    impulse_response,
    load_problem,
    love_laplace,
    problem_to_dict,
    random_love_problem,
    relaxation_spectrum,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_CONVERGENCE = 4

#: Environment variable overriding the default Post-Widder precision.
PRECISION_ENV = "GMB_LOVE_PRECISION"

#: Cap on auto-selected series terms (keeps sweeps interactive).
AUTO_SERIES_CAP = 10**5


@dataclass(frozen=True)
class RunSpec:
    """Parsed invocation: command, model path, grid, method flags, output."""

    command: str
    model_path: str | None
    grid: tuple[float, float, int] | None
    log_spacing: bool
    method: str | None
    output_path: str | None

    @classmethod
    def from_args(cls, args) -> "RunSpec":
        grid = getattr(args, "grid", None)
        if grid is not None:
            start, stop, points = grid
            if points != int(points) or int(points) < 1:
                raise SchemaError(f"grid POINTS must be a positive integer, got {points}")
            grid = (float(start), float(stop), int(points))
        return cls(
            command=args.command,
            model_path=getattr(args, "model", None),
            grid=grid,
            log_spacing=getattr(args, "log", False),
            method=getattr(args, "method", None),
            output_path=getattr(args, "out", None),
        )

    def grid_values(self) -> np.ndarray:
        if self.grid is None:
            raise DomainError(f"'{self.command}' needs --grid for this mode")
        start, stop, points = self.grid
        if points > 1 and not start < stop:
            raise DomainError(f"grid start must be below stop, got [{start}, {stop}]")
        if self.log_spacing:
            if start <= 0 or stop <= 0:
                raise DomainError("log spacing requires positive endpoints")
            return np.geomspace(start, stop, points)
        return np.linspace(start, stop, points)


def _write_csv(path: str | None, header: list[str], rows) -> None:
    def emit(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(x) if isinstance(x, float) else x for x in row])

    if path is None:
        emit(sys.stdout)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            emit(fh)


def _pw_config(args) -> PwConfig:
    digits = args.pw_digits
    if digits is None:
        env = os.environ.get(PRECISION_ENV)
        if env is not None:
            try:
                digits = int(env)
            except ValueError as exc:
                raise SchemaError(f"{PRECISION_ENV} must be an integer, got {env!r}") from exc
    return PwConfig(n_max=args.pw_nmax, precision_digits=digits)


def _cmd_modulus(spec: RunSpec, args) -> int:
    model = load_gmb(spec.model_path)
    rows = []
    for s in spec.grid_values():
        try:
            mu = complex_modulus(model, s)
        except PoleError as exc:
            raise PoleError(f"grid point s = {s!r} hits a modulus pole") from exc
        rows.append((float(s), mu.real, mu.imag))
    _write_csv(spec.output_path, ["s", "mu_re", "mu_im"], rows)
    return EXIT_OK


def _cmd_powerlaw(spec: RunSpec, args) -> int:
    p, q = args.pq
    if not plaw_mod.in_convergence_region(p, q):
        raise DomainError(
            f"(p, q) = ({p}, {q}) is outside the convergence region: the "
            "infinite power-law series diverges (need p >= 2 or q >= 2)"
        )
    closed = args.closed or args.series is None
    grid = spec.grid_values()
    header = ["z"]
    if closed:
        header += ["M_re", "M_im"]
    if args.series is not None:
        header += ["series_re", "series_im", "tail_bound"]
    rows = []
    for z in grid:
        row: list[float] = [float(z)]
        if closed:
            value = plaw_mod.modulus_closed(z, p, q)
            row += [value.real, value.imag]
        if args.series is not None:
            if args.series == "auto":
                try:
                    n_terms = plaw_mod.terms_for_tolerance(z, p, q, 1e-6)
                except DomainError:
                    n_terms = AUTO_SERIES_CAP
                n_terms = min(n_terms, AUTO_SERIES_CAP)
            else:
                n_terms = int(args.series)
            approx = plaw_mod.modulus_truncated(z, p, q, n_terms)
            bound = plaw_mod.tail_bound(z, p, q, n_terms)
            row += [approx.real, approx.imag, bound]
        rows.append(tuple(row))
    _write_csv(spec.output_path, header, rows)
    return EXIT_OK


def _cmd_spectrum(spec: RunSpec, args) -> int:
    problem = load_problem(spec.model_path)
    if args.laplace:
        rows = []
        for s in spec.grid_values():
            value = love_laplace(problem, s)
            rows.append((float(s), value.real, value.imag))
        _write_csv(spec.output_path, ["s", "F_re", "F_im"], rows)
        return EXIT_OK
    sol = relaxation_spectrum(problem)
    residual = abs(sol.elastic_amp + float(np.sum(sol.amplitudes / -sol.rates)) - 1.0)
    closed_dev = None
    if problem.n_elements <= 4:
        closed = relaxation_spectrum(problem, solver="closed-form")
        closed_dev = max(
            abs(c.rate - b.rate) / abs(b.rate)
            for c, b in zip(closed.modes, sol.modes)
        )
    print(f"relaxation spectrum: N = {problem.n_elements}, degree = {problem.degree}")
    print(f"lambda^2 = {problem.lam_sq!r}")
    print(f"elastic amplitude L_e = {sol.elastic_amp!r}")
    print(f"{'rate s_n [1/s]':>24}  {'amplitude L_n':>24}")
    for mode in sol.modes:
        print(f"{mode.rate!r:>24}  {mode.amplitude!r:>24}")
    print(f"sum-rule residual |L_e + sum L_n/(-s_n) - 1| = {residual:.3e}")
    if closed_dev is not None:
        print(f"closed-form vs bracketed max rate deviation = {closed_dev:.3e}")
    if spec.output_path:
        payload = {
            "degree": problem.degree,
            "lambda_squared": problem.lam_sq,
            "elastic_amp": sol.elastic_amp,
            "modes": [
                {"rate": m.rate, "amplitude": m.amplitude} for m in sol.modes
            ],
            "sum_rule_residual": residual,
            "closed_form_max_deviation": closed_dev,
        }
        with open(spec.output_path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def _cmd_invert(spec: RunSpec, args) -> int:
    problem = load_problem(spec.model_path)
    grid = spec.grid_values()
    if spec.method == "heaviside":
        sol = relaxation_spectrum(problem)
        rows = []
        for t in grid:
            regular, _ = impulse_response(sol, t)
            rows.append((float(t), regular, heaviside_load_response(sol, t)))
        _write_csv(spec.output_path, ["t_seconds", "impulse_regular", "heaviside_response"], rows)
        return EXIT_OK
    if np.any(grid <= 0):
        raise DomainError(
            "the Post-Widder method needs strictly positive times; "
            "t = 0 is not invertible (remove it from the grid)"
        )
    config = _pw_config(args)
    rows = []
    any_failed = False
    for t in grid:
        result = pw_invert(problem, float(t), config, kind=args.response)
        if not result.converged:
            any_failed = True
            print(
                f"warning: t = {float(t)!r}: error estimate {result.error_estimate:.3e} "
                f"exceeds target {config.target_tol:.1e}",
                file=sys.stderr,
            )
        rows.append((float(t), result.value, result.error_estimate))
    _write_csv(spec.output_path, ["t_seconds", "value", "pw_error_estimate"], rows)
    return EXIT_CONVERGENCE if any_failed else EXIT_OK


def _cmd_compare(spec: RunSpec, args) -> int:
    if (spec.model_path is None) == (args.random is None):
        raise SchemaError("compare needs exactly one of --model or --random N")
    if args.random is not None:
        if args.seed is None:
            raise SchemaError("--random requires an explicit --seed")
        rng = np.random.default_rng(args.seed)
        problem = random_love_problem(rng, args.random)
    else:
        problem = load_problem(spec.model_path)
    if args.save_model:
        with open(args.save_model, "w", encoding="utf-8") as fh:
            json.dump(problem_to_dict(problem), fh, indent=2)
            fh.write("\n")

    sol = relaxation_spectrum(problem)
    if spec.grid is not None:
        grid = spec.grid_values()
    else:
        taus = [e.tau for e in problem.gmb.elements]
        spread = 1.0 + problem.lam_sq * float(problem.mu_primes.sum())
        grid = np.geomspace(0.1 * min(taus), 10.0 * spread * max(taus), args.points)

    t0 = time.perf_counter()
    if args.response == "step":
        reference = np.array([heaviside_load_response(sol, t) for t in grid])
    else:
        reference = np.array([impulse_response(sol, t)[0] for t in grid])
    heaviside_seconds = time.perf_counter() - t0

    config = _pw_config(args)
    t0 = time.perf_counter()
    pw_values = np.array(
        [pw_invert(problem, float(t), config, kind=args.response).value for t in grid]
    )
    pw_seconds = time.perf_counter() - t0

    floor = 1e-6 * float(np.max(np.abs(reference)))
    mask = np.abs(reference) > floor
    if not np.any(mask):
        raise ConvergenceError("response is below the magnitude floor everywhere")
    deviations = np.abs(pw_values[mask] - reference[mask]) / np.abs(reference[mask])
    report = {
        "n_elements": problem.n_elements,
        "response": args.response,
        "points": int(len(grid)),
        "compared_points": int(mask.sum()),
        "max_relative_deviation": float(np.max(deviations)),
        "median_relative_deviation": float(statistics.median(deviations)),
        "heaviside_seconds": heaviside_seconds,
        "postwidder_seconds": pw_seconds,
    }
    print(f"inversion cross-check (response={args.response}, N={problem.n_elements})")
    print(f"  points compared: {report['compared_points']}/{report['points']}")
    print(f"  max relative deviation:    {report['max_relative_deviation']:.3e}")
    print(f"  median relative deviation: {report['median_relative_deviation']:.3e}")
    print(f"  heaviside wall-clock:  {heaviside_seconds:.3f} s")
    print(f"  postwidder wall-clock: {pw_seconds:.3f} s")
    if spec.output_path:
        with open(spec.output_path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def _add_grid(parser, required=True):
    parser.add_argument(
        "--grid",
        nargs=3,
        type=float,
        metavar=("START", "STOP", "POINTS"),
        required=required,
        help="sweep grid: start, stop, number of points",
    )
    parser.add_argument("--log", action="store_true", help="log-spaced grid")


def _add_pw_flags(parser):
    parser.add_argument("--pw-nmax", type=int, default=24, help="Post-Widder sequence depth")
    parser.add_argument(
        "--pw-digits",
        type=int,
        default=None,
        help=f"working decimal digits (default max(34, 2.5*nmax); env {PRECISION_ENV} overrides)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gmblove",
        description=(
            "Generalized Maxwell body rheologies and homogeneous-sphere Love "
            "numbers: Laplace-domain moduli, relaxation spectra, and "
            "time-domain inversion.  Outputs are normalized by the fluid "
            "limit; models use SI units at the boundary."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_mod = sub.add_parser("modulus", help="complex shear modulus over an s grid")
    p_mod.add_argument("--model", required=True, help="GMB model JSON")
    _add_grid(p_mod)
    p_mod.add_argument("--out", default=None, help="output CSV (default stdout)")

    p_pl = sub.add_parser("powerlaw", help="power-law modulus M(z; p, q) over a z grid")
    p_pl.add_argument("--pq", nargs=2, type=int, metavar=("P", "Q"), required=True)
    _add_grid(p_pl)
    p_pl.add_argument("--closed", action="store_true", help="closed-form columns (default)")
    p_pl.add_argument(
        "--series",
        default=None,
        metavar="N",
        help="truncated-series columns with N terms, or 'auto' for a tail-bound choice",
    )
    p_pl.add_argument("--out", default=None)

    p_sp = sub.add_parser("spectrum", help="relaxation spectrum of a Love problem")
    p_sp.add_argument("--model", required=True, help="Love problem JSON")
    p_sp.add_argument(
        "--laplace",
        action="store_true",
        help="emit the normalized Laplace-domain Love number over --grid instead",
    )
    _add_grid(p_sp, required=False)
    p_sp.add_argument("--out", default=None, help="JSON (spectrum) or CSV (--laplace)")

    p_inv = sub.add_parser("invert", help="time-domain Love number over a t grid")
    p_inv.add_argument("--model", required=True, help="Love problem JSON")
    _add_grid(p_inv)
    p_inv.add_argument(
        "--method", choices=("heaviside", "postwidder"), default="heaviside"
    )
    p_inv.add_argument(
        "--response",
        choices=("step", "impulse"),
        default="step",
        help="step-load response or regular part of the impulse response",
    )
    _add_pw_flags(p_inv)
    p_inv.add_argument("--out", default=None)

    p_cmp = sub.add_parser(
        "compare", help="cross-check the two inversion paths on one problem"
    )
    p_cmp.add_argument("--model", default=None, help="Love problem JSON")
    p_cmp.add_argument(
        "--random", type=int, default=None, metavar="N", help="random N-element problem"
    )
    p_cmp.add_argument("--seed", type=int, default=None, help="RNG seed for --random")
    _add_grid(p_cmp, required=False)
    p_cmp.add_argument(
        "--points", type=int, default=10, help="points for the default auto grid"
    )
    p_cmp.add_argument("--response", choices=("step", "impulse"), default="step")
    _add_pw_flags(p_cmp)
    p_cmp.add_argument("--save-model", default=None, help="write the problem JSON here")
    p_cmp.add_argument("--out", default=None, help="JSON report path")

    return parser


_DISPATCH = {
    "modulus": _cmd_modulus,
    "powerlaw": _cmd_powerlaw,
    "spectrum": _cmd_spectrum,
    "invert": _cmd_invert,
    "compare": _cmd_compare,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = RunSpec.from_args(args)
        return _DISPATCH[args.command](spec, args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, PoleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except GmbLoveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
