"""Love numbers of the homogeneous incompressible self-gravitating sphere.

With a GMB rheology the normalized Laplace-domain Love number is the
rational function

    F(s) = 1 / (1 + lam2 * mu(s)/mu_e) = P(s)/Q(s),

where ``lam2`` measures the elastic-to-gravitational stress ratio at the
given harmonic degree and ``mu(s)`` is the complex shear modulus of the
GMB.  All N roots of Q are real, negative and distinct, so the inverse
transform is an elastic impulse plus N decaying exponentials (Heaviside
expansion).  Roots are isolated by bracketing between the modulus poles,
which is guaranteed by the sign structure; for N <= 4 an independent
radical-formula solver is provided as a cross-check.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from functools import cached_property

import mpmath
import numpy as np

from .errors import DomainError, PoleError, SchemaError
from .rheology import (
    GmbModel,
    _bracketed_root,
    gmb_from_dict,
    gmb_to_dict,
    merge_duplicate_taus,
    modulus_poles,
    random_gmb,
)

#: Newton's gravitational constant [m^3 kg^-1 s^-2].
NEWTON_G = 6.67e-11


@dataclass(frozen=True)
class SphereModel:
    """Homogeneous sphere: density, radius, elastic rigidity."""

    rho: float
    radius: float
    mu_e: float
    newton_g: float = NEWTON_G

    def __post_init__(self):
        for name in ("rho", "radius", "mu_e", "newton_g"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise SchemaError(f"{name} must be positive and finite, got {value}")

    @property
    def surface_gravity(self) -> float:
        """g = (4/3) pi G rho a [m/s^2]."""
        return (4.0 / 3.0) * math.pi * self.newton_g * self.rho * self.radius

    @property
    def stress_ratio(self) -> float:
        """mu_e / (rho g a), elastic over gravitational stress."""
        return self.mu_e / (self.rho * self.surface_gravity * self.radius)


def lambda_squared(sphere: SphereModel, degree: int) -> float:
    """Degree-dependent stress ratio ((2 l^2 + 4 l + 3)/l) * mu_e/(rho g a)."""
    if degree < 1 or degree != int(degree):
        raise DomainError(f"harmonic degree must be an integer >= 1, got {degree}")
    l = float(degree)
    return (2.0 * l * l + 4.0 * l + 3.0) / l * sphere.stress_ratio


@dataclass(frozen=True)
class LoveProblem:
    """Sphere + harmonic degree + fluid-limit normalization + GMB rheology.

    ``fluid_limit`` is the user-supplied s -> 0 limit of the physical Love
    number; the toolkit computes the normalized response F = L/L_f, so the
    fluid limit only rescales outputs.  Degree 1 is accepted (numerically
    well defined), though degree-1 loading physically requires
    reference-frame care that is outside this toolkit's scope.
    """

    sphere: SphereModel
    degree: int
    fluid_limit: float
    gmb: GmbModel

    def __post_init__(self):
        if self.degree < 1 or self.degree != int(self.degree):
            raise SchemaError(f"harmonic degree must be >= 1, got {self.degree}")
        if not math.isfinite(self.fluid_limit):
            raise SchemaError(f"fluid limit must be finite, got {self.fluid_limit}")
        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(self, "gmb", merge_duplicate_taus(self.gmb))

    @cached_property
    def lam_sq(self) -> float:
        return lambda_squared(self.sphere, self.degree)

    @cached_property
    def mu_primes(self) -> np.ndarray:
        """Element rigidities normalized by the elastic rigidity."""
        return np.array([e.mu / self.sphere.mu_e for e in self.gmb.elements])

    @cached_property
    def inv_taus(self) -> np.ndarray:
        return np.array([1.0 / e.tau for e in self.gmb.elements])

    @property
    def n_elements(self) -> int:
        return len(self.gmb)

    @property
    def elastic_amplitude(self) -> float:
        """High-frequency limit 1/(1 + lam2 sum mu'_n) of F(s)."""
        return 1.0 / (1.0 + self.lam_sq * float(self.mu_primes.sum()))


def _loading_term(problem: LoveProblem, s: float) -> float:
    """lam2 * mu(s)/mu_e on the real axis (no pole guard)."""
    return problem.lam_sq * float(
        np.sum(problem.mu_primes * s / (s + problem.inv_taus))
    )


def _loading_term_slope(problem: LoveProblem, s: float) -> float:
    return problem.lam_sq * float(
        np.sum(problem.mu_primes * problem.inv_taus / (s + problem.inv_taus) ** 2)
    )


def love_laplace(problem: LoveProblem, s: complex | float) -> complex:
    """Normalized Laplace-domain Love number F(s) = 1/(1 + lam2 mu(s)/mu_e).

    Multiply by ``problem.fluid_limit`` for the physical Love number.

    Raises:
        PoleError: at the modulus poles and at the roots of Q.
    """
    s = complex(s)
    den = s + problem.inv_taus
    if np.any(den == 0):
        raise PoleError(f"modulus pole at s = {s}")
    g = problem.lam_sq * complex(np.sum(problem.mu_primes * s / den))
    if 1.0 + g == 0:
        raise PoleError(f"Love number pole at s = {s}")
    return 1.0 / (1.0 + g)


def pq_polynomials(problem: LoveProblem) -> tuple[np.ndarray, np.ndarray]:
    """Numerator and denominator coefficients of F(s) = P(s)/Q(s).

    P(s) = prod_n (s + 1/tau_n) and Q(s) = P(s) + lam2 sum_n mu'_n s *
    prod_{m != n} (s + 1/tau_m); both arrays are degree-N coefficient
    sequences in numpy convention (highest power first), assembled by
    convolution of the monomial factors in descending-tau order.
    """
    order = np.argsort(problem.inv_taus)  # ascending 1/tau == descending tau
    inv_taus = problem.inv_taus[order]
    mu_primes = problem.mu_primes[order]
    p_coeffs = np.array([1.0])
    for it in inv_taus:
        p_coeffs = np.convolve(p_coeffs, [1.0, it])
    q_coeffs = p_coeffs.copy()
    for k, mu_p in enumerate(mu_primes):
        partial = np.array([1.0])
        for j, it in enumerate(inv_taus):
            if j != k:
                partial = np.convolve(partial, [1.0, it])
        partial = np.convolve(partial, [1.0, 0.0])  # times s
        q_coeffs = q_coeffs + problem.lam_sq * mu_p * np.pad(
            partial, (len(q_coeffs) - len(partial), 0)
        )
    return p_coeffs, q_coeffs


@dataclass(frozen=True)
class RelaxationMode:
    """One decaying exponential: rate s_n < 0 [1/s] and amplitude."""

    rate: float
    amplitude: float


@dataclass(frozen=True)
class RelaxationSolution:
    """Elastic amplitude plus N relaxation modes of the time-domain response.

    The impulse response is ``elastic_amp * delta(t) + sum_n amp_n *
    exp(rate_n t)``; the delta amplitude is carried symbolically and never
    sampled.  Rates are strictly negative, distinct, ascending.
    """

    elastic_amp: float
    modes: tuple[RelaxationMode, ...]
    normalized: bool = True

    def __post_init__(self):
        rates = [m.rate for m in self.modes]
        if any(r >= 0 for r in rates):
            raise DomainError("all relaxation rates must be strictly negative")
        if any(b <= a for a, b in zip(rates, rates[1:])):
            raise DomainError("relaxation rates must be distinct and ascending")

    @cached_property
    def rates(self) -> np.ndarray:
        return np.array([m.rate for m in self.modes])

    @cached_property
    def amplitudes(self) -> np.ndarray:
        return np.array([m.amplitude for m in self.modes])


def _q_roots_bracketed(problem: LoveProblem) -> list[float]:
    """All N roots of Q via guaranteed bracketing between the modulus poles.

    H(s) = 1 + lam2 mu(s)/mu_e runs monotonically from -inf to +inf across
    each gap between consecutive poles and from -inf to H(0) = 1 on the
    rightmost interval, so each of the N intervals holds exactly one root.
    """
    poles = modulus_poles(problem.gmb)
    f = lambda s: 1.0 + _loading_term(problem, s)
    brackets = list(zip(poles[:-1], poles[1:])) + [(poles[-1], 0.0)]
    return [_bracketed_root(f, a, b) for a, b in brackets]


def _real_roots_by_radicals(coeffs: list[float]) -> list[float]:
    """Real roots of a degree <= 4 polynomial by radical formulas.

    Evaluated in 50-digit arithmetic (mpmath) because the radical formulas
    are cancellation-prone in doubles; the mathematical path is still the
    classical one: quadratic formula, trigonometric cubic, Ferrari quartic.
    Coefficients are numpy convention (highest power first), leading
    coefficient nonzero, and all roots are assumed real.
    """
    degree = len(coeffs) - 1
    if degree > 4:
        raise DomainError("radical formulas exist only up to degree 4")
    with mpmath.workdps(50):
        c = [mpmath.mpf(x) / mpmath.mpf(coeffs[0]) for x in coeffs]
        if degree == 1:
            roots = [-c[1]]
        elif degree == 2:
            roots = _quadratic_mp(c[1], c[2])
        elif degree == 3:
            roots = _cubic_mp(c[1], c[2], c[3])
        else:
            roots = _quartic_mp(c[1], c[2], c[3], c[4])
        return sorted(float(r) for r in roots)


def _quadratic_mp(b, c):
    disc = mpmath.sqrt(b * b - 4 * c)
    u = -(b + disc) / 2 if b >= 0 else -(b - disc) / 2
    return [u, c / u]


def _cubic_mp(a, b, c):
    # depressed cubic u^3 + p u + q with s = u - a/3
    shift = a / 3
    p = b - a * a / 3
    q = 2 * a**3 / 27 - a * b / 3 + c
    if p >= 0:
        # cannot happen for three distinct real roots; fall back to Cardano
        d = mpmath.sqrt((q / 2) ** 2 + (p / 3) ** 3)
        u = mpmath.cbrt(-q / 2 + d)
        v = -p / (3 * u) if u != 0 else mpmath.mpf(0)
        return [u + v - shift]
    r = 2 * mpmath.sqrt(-p / 3)
    arg = 3 * q / (p * r)
    arg = max(-1, min(1, arg))
    theta = mpmath.acos(arg)
    return [
        r * mpmath.cos((theta - 2 * mpmath.pi * k) / 3) - shift for k in range(3)
    ]


def _quartic_mp(a, b, c, d):
    # depressed quartic u^4 + p u^2 + q u + r with s = u - a/4
    shift = a / 4
    p = b - 3 * a * a / 8
    q = c - a * b / 2 + a**3 / 8
    r = d - a * c / 4 + a * a * b / 16 - 3 * a**4 / 256
    if q == 0:  # biquadratic
        disc = mpmath.sqrt(p * p - 4 * r)
        roots = []
        for sgn in (1, -1):
            u2 = (-p + sgn * disc) / 2
            if u2 >= 0:
                roots.extend([mpmath.sqrt(u2) - shift, -mpmath.sqrt(u2) - shift])
        return roots
    # Ferrari: resolvent 8 m^3 + 8 p m^2 + (2 p^2 - 8 r) m - q^2 = 0 has a
    # positive real root m; pick the largest real root for stability.
    res = _cubic_mp(p, (2 * p * p - 8 * r) / 8, -q * q / 8)
    m = max(res)
    sq2m = mpmath.sqrt(2 * m)
    roots = []
    for sgn in (1, -1):
        bq = -sgn * sq2m
        cq = p / 2 + m + sgn * q / (2 * sq2m)
        disc = bq * bq - 4 * cq
        if disc < 0:
            disc = mpmath.mpf(0)  # round-off guard; roots are known real
        sd = mpmath.sqrt(disc)
        roots.extend([(-bq + sd) / 2 - shift, (-bq - sd) / 2 - shift])
    return roots


#: Relative disagreement above which the radical solver is distrusted.
CLOSED_FORM_RTOL = 1e-10


def relaxation_spectrum(problem: LoveProblem, solver: str = "bracketed") -> RelaxationSolution:
    """Relaxation spectrum: elastic amplitude, modal amplitudes, rates.

    The rates s_n are the N roots of Q(s) = 0; the modal amplitudes are
    the Heaviside-expansion residues P(s_n)/Q'(s_n), evaluated in the
    cancellation-free form 1/H'(s_n) with H = 1 + lam2 mu(s)/mu_e (the two
    agree identically at a root of Q = P*H since P has no root there).

    ``solver`` is "bracketed" (default, any N) or "closed-form" (N <= 4
    radical formulas, cross-checked against bracketing; on disagreement
    beyond 1e-10 relative the bracketed roots win and a warning is
    emitted).
    """
    if solver not in ("bracketed", "closed-form"):
        raise DomainError(f"unknown solver {solver!r}")
    if solver == "closed-form":
        if problem.n_elements > 4:
            raise DomainError(
                "radical formulas do not exist beyond degree 4; "
                f"N = {problem.n_elements} requires the bracketed solver"
            )
        _, q_coeffs = pq_polynomials(problem)
        roots = _real_roots_by_radicals(list(q_coeffs))
        bracketed = _q_roots_bracketed(problem)
        dev = max(
            abs(r - b) / abs(b) for r, b in zip(roots, sorted(bracketed))
        ) if roots else 0.0
        if len(roots) != problem.n_elements or dev > CLOSED_FORM_RTOL:
            warnings.warn(
                f"radical-formula roots disagree with bracketing by {dev:.2e}; "
                "using the bracketed values",
                RuntimeWarning,
                stacklevel=2,
            )
            roots = bracketed
    else:
        roots = _q_roots_bracketed(problem)
    roots = sorted(roots)
    amplitudes = [1.0 / _loading_term_slope(problem, r) for r in roots]
    return RelaxationSolution(
        elastic_amp=problem.elastic_amplitude,
        modes=tuple(
            RelaxationMode(rate=r, amplitude=a) for r, a in zip(roots, amplitudes)
        ),
    )


def impulse_response(sol: RelaxationSolution, t):
    """Regular part ``sum_n amp_n exp(rate_n t)`` and the delta amplitude.

    Returns a pair (regular, elastic_amp); the impulsive term
    ``elastic_amp * delta(t)`` is never sampled numerically.  ``t`` may be
    a scalar or an array, in seconds, and must be >= 0.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("time must be non-negative")
    regular = np.sum(
        sol.amplitudes * np.exp(np.multiply.outer(t, sol.rates)), axis=-1
    )
    return (float(regular) if regular.ndim == 0 else regular), sol.elastic_amp


def heaviside_load_response(sol: RelaxationSolution, t):
    """Response to a unit step load: L_e + sum_n amp_n (1 - e^{rate t})/(-rate).

    Rises monotonically from the elastic value L_e at t = 0 to the fluid
    limit (1 in normalized units) as t -> infinity.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("time must be non-negative")
    growth = -np.expm1(np.multiply.outer(t, sol.rates))  # 1 - exp(rate*t)
    value = sol.elastic_amp + np.sum(
        sol.amplitudes / (-sol.rates) * growth, axis=-1
    )
    return float(value) if value.ndim == 0 else value


# ---------------------------------------------------------------------------
# serialization and sampling

def problem_to_dict(problem: LoveProblem) -> dict:
    sphere = {
        "rho": problem.sphere.rho,
        "radius": problem.sphere.radius,
        "mu_e": problem.sphere.mu_e,
        "newton_g": problem.sphere.newton_g,
    }
    return {
        "sphere": sphere,
        "degree": problem.degree,
        "fluid_limit": problem.fluid_limit,
        "gmb": gmb_to_dict(problem.gmb),
    }


def problem_from_dict(data: dict) -> LoveProblem:
    try:
        sd = data["sphere"]
        sphere = SphereModel(
            rho=float(sd["rho"]),
            radius=float(sd["radius"]),
            mu_e=float(sd["mu_e"]),
            newton_g=float(sd.get("newton_g", NEWTON_G)),
        )
        return LoveProblem(
            sphere=sphere,
            degree=int(data["degree"]),
            fluid_limit=float(data["fluid_limit"]),
            gmb=gmb_from_dict(data["gmb"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed Love problem: {exc}") from exc


def load_problem(path: str) -> LoveProblem:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON in {path}: {exc}") from exc
    return problem_from_dict(data)


def earth_like_sphere(mu_e: float = 200e9) -> SphereModel:
    """Sphere with PREM-like bulk numbers: a = 6371 km, g = 9.81 m/s^2.

    The density is chosen so that the self-consistent surface gravity
    (4/3) pi G rho a reproduces 9.81 m/s^2.
    """
    radius = 6.371e6
    rho = 3.0 * 9.81 / (4.0 * math.pi * NEWTON_G * radius)
    return SphereModel(rho=rho, radius=radius, mu_e=mu_e)


def random_love_problem(
    rng: np.random.Generator,
    n_elements: int,
    degree: int = 2,
    mu_prime_decades: tuple[float, float] = (-3.0, 3.0),
    tau_decades: tuple[float, float] = (-3.0, 3.0),
) -> LoveProblem:
    """Random problem on the Earth-like sphere with log-uniform moduli."""
    sphere = earth_like_sphere()
    gmb = random_gmb(
        rng,
        n_elements,
        mu_scale=sphere.mu_e,
        mu_decades=mu_prime_decades,
        tau_decades=tau_decades,
    )
    return LoveProblem(sphere=sphere, degree=degree, fluid_limit=1.0, gmb=gmb)
