"""Real-axis Laplace inversion of the Love number by the Post-Widder sequence.

The inverse transform at time t is the limit of

    f_n(t) = ((-1)**n / n!) * (n/t)**(n+1) * F^(n)(n/t),

which needs only derivatives of F along the positive real axis.  For the
homogeneous sphere F(s) = 1/(1 + g(s)) with g a rational loading term
whose derivatives of every order are available in closed form, so F^(n)
follows exactly from Faa di Bruno's formula with incomplete Bell
polynomials -- no finite differences.  The sequence converges like 1/n;
Wynn's rho algorithm accelerates it to near working precision.  All inner
arithmetic runs in mpmath extended precision because the factorial/power
factors in f_n destroy double precision near n ~ 20.

The delta-function part of the impulse response (amplitude L_e) is carried
symbolically: a constant added to F contributes nothing to any f_n with
n >= 1, so the sequence converges to the regular (decaying) part alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np
from mpmath import mp

from .errors import DomainError, SchemaError
from .love import LoveProblem
from .powerlaw import PowerLawGmb, modulus_series
from .special import bell_triangle, zeta_int, zeta_tail

#: Hard cap on the derivative order / sequence depth.
N_MAX_LIMIT = 40


def default_digits(n_max: int) -> int:
    """Working decimal precision needed for a depth-n_max sequence."""
    return max(34, math.ceil(2.5 * n_max))


@dataclass(frozen=True)
class PwConfig:
    """Sequence depth, working precision and acceleration settings.

    ``precision_digits = None`` resolves to ``max(34, ceil(2.5 * n_max))``.
    """

    n_max: int = 24
    precision_digits: int | None = None
    acceleration: str = "rho"
    target_tol: float = 1e-6

    def __post_init__(self):
        if not 1 <= self.n_max <= N_MAX_LIMIT:
            raise SchemaError(f"n_max must be in [1, {N_MAX_LIMIT}], got {self.n_max}")
        if self.precision_digits is not None and self.precision_digits < 15:
            raise SchemaError(
                f"precision_digits must be >= 15, got {self.precision_digits}"
            )
        if self.acceleration not in ("none", "rho"):
            raise SchemaError(f"unknown acceleration {self.acceleration!r}")
        if not (self.target_tol > 0):
            raise SchemaError(f"target_tol must be positive, got {self.target_tol}")

    @property
    def digits(self) -> int:
        if self.precision_digits is not None:
            return self.precision_digits
        return default_digits(self.n_max)


def config_to_dict(config: PwConfig) -> dict:
    return {
        "n_max": config.n_max,
        "precision_digits": config.digits,
        "acceleration": config.acceleration,
        "target_tol": config.target_tol,
    }


def config_from_dict(data: dict) -> PwConfig:
    try:
        return PwConfig(
            n_max=int(data.get("n_max", 24)),
            precision_digits=(
                int(data["precision_digits"]) if "precision_digits" in data else None
            ),
            acceleration=str(data.get("acceleration", "rho")),
            target_tol=float(data.get("target_tol", 1e-6)),
        )
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"malformed Post-Widder config: {exc}") from exc


@dataclass(frozen=True)
class DerivativeStack:
    """Loading term g(s) and its derivatives g^(1)..g^(n) at one point."""

    value: mpmath.mpf
    derivatives: tuple


@dataclass(frozen=True)
class PwResult:
    """Accelerated Post-Widder value with its extrapolation error estimate."""

    value: float
    error_estimate: float
    converged: bool
    n_terms: int


def loading_term_derivatives(
    problem: LoveProblem, s, n: int, config: PwConfig | None = None
) -> DerivativeStack:
    """g(s) = lam2 mu(s)/mu_e and g^(1)..g^(n) at real s > 0, in mpf.

    Each derivative is the exact rational-function formula
    ``g^(m)(s) = lam2 (-1)**(m+1) m! sum_k (mu'_k/tau_k)/(s + 1/tau_k)**(m+1)``
    evaluated at the configured precision.  The sign pattern
    ``(-1)**(m+1) g^(m) >= 0`` on s > 0 is inherited from the complete
    monotonicity of the modulus.
    """
    config = config or PwConfig()
    if n < 0:
        raise DomainError(f"derivative order must be >= 0, got {n}")
    with mp.workdps(config.digits):
        s = mpmath.mpf(s)
        if s <= 0:
            raise DomainError("loading-term derivatives are defined for s > 0")
        lam2 = mpmath.mpf(problem.lam_sq)
        mu_p = [mpmath.mpf(e.mu) / mpmath.mpf(problem.sphere.mu_e) for e in problem.gmb.elements]
        inv_tau = [mpmath.mpf(e.mu) / mpmath.mpf(e.eta) for e in problem.gmb.elements]
        value = lam2 * mpmath.fsum(m * s / (s + it) for m, it in zip(mu_p, inv_tau))
        derivs = []
        for order in range(1, n + 1):
            core = mpmath.fsum(
                m * it / (s + it) ** (order + 1) for m, it in zip(mu_p, inv_tau)
            )
            sign = 1 if order % 2 == 1 else -1
            derivs.append(lam2 * sign * mpmath.factorial(order) * core)
        return DerivativeStack(value=value, derivatives=tuple(derivs))


def _love_derivatives_upto(
    problem: LoveProblem, s, n: int, config: PwConfig
) -> list:
    """[F(s), F'(s), ..., F^(n)(s)] via Faa di Bruno, one Bell table."""
    stack = loading_term_derivatives(problem, s, n, config)
    with mp.workdps(config.digits):
        one_plus = 1 + stack.value
        table = bell_triangle(n, stack.derivatives)
        # k-th derivative of the outer map 1/(1+g) with respect to g
        outer = [(-1) ** k * mpmath.factorial(k) / one_plus ** (k + 1) for k in range(n + 1)]
        out = []
        for order in range(n + 1):
            out.append(
                mpmath.fsum(outer[k] * table[order][k] for k in range(order + 1))
            )
        return out


def love_derivative(
    problem: LoveProblem, s, n: int, config: PwConfig | None = None
) -> mpmath.mpf:
    """n-th derivative of the normalized Love transform F at real s > 0.

    Faa di Bruno's chain rule for F = 1/(1+g):

        F^(n)(s) = sum_k F^(k)(g) B_{n,k}(g', g'', ..., g^(n-k+1))

    with ``F^(k)(g) = (-1)**k k!/(1+g)**(k+1)`` and the Bell polynomials
    built by recurrence in extended precision.

    Raises:
        DomainError: if n exceeds the configured n_max.
    """
    config = config or PwConfig()
    if n > config.n_max:
        raise DomainError(
            f"derivative order {n} exceeds the configured n_max = {config.n_max}"
        )
    return _love_derivatives_upto(problem, s, n, config)[n]


def pw_combine(derivative_value, t, n: int):
    """n-th Post-Widder approximant from F^(n)(n/t), in the active precision."""
    if n < 1:
        raise DomainError(f"the sequence starts at n = 1, got {n}")
    tt = mpmath.mpf(t)
    return (
        (-1) ** n
        / mpmath.factorial(n)
        * (mpmath.mpf(n) / tt) ** (n + 1)
        * derivative_value
    )


def pw_approximant(
    problem: LoveProblem, t, n: int, config: PwConfig | None = None
) -> float:
    """n-th Post-Widder approximant of the regular impulse response at t > 0.

    Converges like O(1/n); :func:`pw_invert` accelerates the sequence.
    """
    config = config or PwConfig()
    if not t > 0:
        raise DomainError(f"Post-Widder needs t > 0, got {t}")
    with mp.workdps(config.digits):
        s = mpmath.mpf(n) / mpmath.mpf(t)
        fn = love_derivative(problem, s, n, config)
        return float(pw_combine(fn, t, n))


def _approximant_sequence(
    problem: LoveProblem, t, config: PwConfig, kind: str
) -> list:
    with mp.workdps(config.digits):
        tt = mpmath.mpf(t)
        terms = []
        for n in range(1, config.n_max + 1):
            s = mpmath.mpf(n) / tt
            derivs = _love_derivatives_upto(problem, s, n, config)
            if kind == "impulse":
                top = derivs[n]
            else:  # step response: derivatives of F(s)/s by Leibniz
                top = mpmath.fsum(
                    mpmath.binomial(n, j)
                    * derivs[j]
                    * (-1) ** (n - j)
                    * mpmath.factorial(n - j)
                    / s ** (n - j + 1)
                    for j in range(n + 1)
                )
            terms.append(pw_combine(top, tt, n))
        return terms


def wynn_rho(terms: Sequence) -> tuple:
    """Wynn's rho extrapolation of a logarithmically convergent sequence.

    Interpolation points x_n = n suit sequences with an asymptotic
    expansion in powers of 1/n, which the Post-Widder approximants have.
    Returns (limit_estimate, error_estimate) in the active precision; the
    error estimate is the last increment between even-column heads.
    """
    m = len(terms)
    if m == 0:
        raise DomainError("cannot extrapolate an empty sequence")
    if m == 1:
        return terms[0], mpmath.inf
    xs = [mpmath.mpf(i + 1) for i in range(m)]
    prev2 = [mpmath.mpf(0)] * (m + 1)  # column k-1 (k = -1 start)
    prev = list(terms)  # column k = 0
    heads = [prev[0]]
    for k in range(1, m):
        cur = []
        stop = False
        for i in range(m - k):
            denom = prev[i + 1] - prev[i]
            if denom == 0:
                stop = True
                break
            cur.append(prev2[i + 1] + (xs[i + k] - xs[i]) / denom)
        if stop or not cur:
            break
        prev2, prev = prev, cur
        if k % 2 == 0:
            heads.append(cur[0])
    if len(heads) == 1:
        return terms[-1], abs(terms[-1] - terms[-2])
    return heads[-1], abs(heads[-1] - heads[-2])


#: Magnitude floor for relative convergence checks (normalized responses
#: are O(1); values this small count as converged-to-zero).
CONVERGENCE_FLOOR = 1e-6


def pw_invert(
    problem: LoveProblem,
    t,
    config: PwConfig | None = None,
    kind: str = "impulse",
) -> PwResult:
    """Accelerated Post-Widder inversion of the normalized Love number.

    ``kind`` selects the target: "impulse" inverts the regular part of the
    impulse response (the delta amplitude L_e is reported separately by
    the spectrum machinery); "step" inverts F(s)/s, the response to a unit
    step load, whose derivatives follow from Leibniz's rule.

    The result carries the extrapolation error estimate; ``converged`` is
    the relative check against ``config.target_tol`` (with an absolute
    floor of 1e-6 for responses that have decayed to zero).  No exception
    is raised on non-convergence so that grid sweeps can continue.
    """
    config = config or PwConfig()
    if kind not in ("impulse", "step"):
        raise DomainError(f"unknown inversion kind {kind!r}")
    if not t > 0:
        raise DomainError(f"Post-Widder needs t > 0, got {t}")
    with mp.workdps(config.digits):
        terms = _approximant_sequence(problem, t, config, kind)
        if config.acceleration == "rho":
            value, err = wynn_rho(terms)
        else:
            value = terms[-1]
            err = abs(terms[-1] - terms[-2]) if len(terms) > 1 else mpmath.inf
        value_f = float(value)
        err_f = float(err)
    converged = err_f <= config.target_tol * max(abs(value_f), CONVERGENCE_FLOOR)
    return PwResult(
        value=value_f,
        error_estimate=err_f,
        converged=converged,
        n_terms=config.n_max,
    )


def _powerlaw_derivative_core(z: float, p: int, q: int, order: int) -> float:
    """sum_k k**(d-p) / (z + k**d)**(order+1) for real z > 0, d = q - p.

    All terms are positive, so double-precision summation of a direct
    prefix is cancellation-free; the tail is expanded binomially in the
    small ratio (z/k**d or k**d/z) and reduced to Euler-Maclaurin zeta
    tails, exactly as in the rigorously bounded series evaluator.
    """
    d = q - p
    big = order + 1
    if d == 0:  # all elements share the pole at -1
        return zeta_int(p) / (1.0 + z) ** big
    if d > 0:
        cutoff = max(64, math.ceil((4.0 * z) ** (1.0 / d)))
        ratio = z  # expansion variable z * k**-d
        base_exp = p + d * order
    else:
        cutoff = max(64, math.ceil((4.0 / z) ** (1.0 / -d)))
        ratio = 1.0 / z
        base_exp = 2 * p - q
    k = np.arange(1, cutoff + 1, dtype=float)
    total = float(np.sum(k ** (d - p) / (z + k**d) ** big))
    prefactor = 1.0 if d > 0 else z**-big
    coeff = 1.0
    sign = 1.0
    for j in range(200):
        tail, _ = zeta_tail(base_exp + abs(d) * j, cutoff)
        contribution = (coeff * tail) * ratio**j * prefactor * sign
        if not math.isfinite(contribution):
            break
        total += contribution
        # binomial coefficients grow before the tails win; only trust a
        # small contribution once j has passed the growth phase
        if contribution == 0.0 or (j >= big and abs(contribution) <= 1e-16 * abs(total)):
            break
        coeff = coeff * (big + j) / (j + 1)  # C(big-1+j, j) -> C(big+j, j+1)
        sign = -sign
    return total


def powerlaw_loading_derivatives(
    plaw: PowerLawGmb,
    lam_sq: float,
    mu_e: float,
    s,
    n: int,
    config: PwConfig | None = None,
) -> DerivativeStack:
    """EXPERIMENTAL: loading-term derivatives for an infinite power-law GMB.

    Replaces the finite element sum with the term-by-term series of the
    power-law family.  The series are evaluated in double precision (they
    are sums of positive terms with algebraically expanded tails, accurate
    to ~1e-13 relative), which caps the accuracy of the whole stack; the
    supported finite-N path is exact to the configured digits.  Exposed
    for experimentation with inversion of infinite relaxation spectra.
    """
    config = config or PwConfig()
    if plaw.n_elements != math.inf:
        raise DomainError("the experimental series path is for infinite families")
    p, q = plaw.p, plaw.q
    with mp.workdps(config.digits):
        s = mpmath.mpf(s)
        if s <= 0:
            raise DomainError("loading-term derivatives are defined for s > 0")
        tau_star = mpmath.mpf(plaw.eta_star) / mpmath.mpf(plaw.mu_star)
        z = s * tau_star
        scale = mpmath.mpf(lam_sq) * mpmath.mpf(plaw.mu_star) / mpmath.mpf(mu_e)
        m_value, _ = modulus_series(float(z), p, q, tol=1e-12)
        value = scale * mpmath.mpf(m_value.real)
        derivs = []
        for order in range(1, n + 1):
            core = _powerlaw_derivative_core(float(z), p, q, order)
            sign = 1 if order % 2 == 1 else -1
            # chain rule: d^m/ds^m = tau_star**m * d^m/dz^m
            derivs.append(
                scale * tau_star**order * sign * mpmath.factorial(order) * mpmath.mpf(core)
            )
        return DerivativeStack(value=value, derivatives=tuple(derivs))
