"""Power-law GMB family: normalized modulus m(z; p, q) = sum_n z/(n**p z + n**q).

A GMB whose rigidities fall off like ``mu* / n**p`` and viscosities like
``eta* / n**q`` has a normalized complex modulus given by the series above,
in the dimensionless variable ``z = s * tau*`` with ``tau* = eta*/mu*``.
For an infinite number of elements the series converges uniformly exactly
when ``p >= 2 or q >= 2`` (the convergence region); its sum then has
closed forms in terms of the digamma function, the Riemann zeta function,
and coth, which this module evaluates alongside truncated partial sums
and a rigorously tail-bounded series evaluator used for cross-checks.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError, SchemaError
from .special import EULER_GAMMA, coth, digamma, zeta_int, zeta_tail

#: Element count marking an infinite power-law assembly.
INFINITE = math.inf

#: Hard cap on the number of directly summed terms.
MAX_TERMS = 10**7


def in_convergence_region(p: int, q: int) -> bool:
    """True if the infinite series converges uniformly (p >= 2 or q >= 2)."""
    return p >= 2 or q >= 2


def _validate_exponents(p: int, q: int) -> tuple[int, int]:
    if p != int(p) or q != int(q) or p < 0 or q < 0:
        raise DomainError(f"exponents must be non-negative integers, got ({p}, {q})")
    return int(p), int(q)


@dataclass(frozen=True)
class PowerLawGmb:
    """Power-law family: exponents (p, q), reference moduli, element count.

    ``n_elements`` is a positive integer or ``INFINITE``; the infinite case
    requires (p, q) inside the convergence region.
    """

    p: int
    q: int
    mu_star: float
    eta_star: float
    n_elements: int | float = INFINITE

    def __post_init__(self):
        p, q = _validate_exponents(self.p, self.q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        if not (self.mu_star > 0 and math.isfinite(self.mu_star)):
            raise SchemaError(f"mu_star must be positive, got {self.mu_star}")
        if not (self.eta_star > 0 and math.isfinite(self.eta_star)):
            raise SchemaError(f"eta_star must be positive, got {self.eta_star}")
        if self.n_elements == INFINITE:
            if not in_convergence_region(p, q):
                raise DomainError(
                    f"infinite power-law GMB with (p, q) = ({p}, {q}) diverges; "
                    "need p >= 2 or q >= 2"
                )
        elif self.n_elements != int(self.n_elements) or self.n_elements < 1:
            raise SchemaError(
                f"n_elements must be a positive integer or INFINITE, got {self.n_elements}"
            )

    @property
    def tau_star(self) -> float:
        return self.eta_star / self.mu_star


def pole_location(p: int, q: int, n: int) -> float:
    """n-th pole z_n = -n**(q-p) of m(z; p, q).

    The poles are simple and lie on the negative real axis.  For q > p they
    accumulate at -infinity, for q < p at 0-, and for p == q all elements
    share the single pole z = -1.
    """
    p, q = _validate_exponents(p, q)
    if n < 1:
        raise DomainError(f"pole index must be >= 1, got {n}")
    return -float(n) ** (q - p)


def _nearest_pole_index(z: complex, p: int, q: int) -> int | None:
    """Index n if z sits on the pole -n**(q-p) within 1e-12 relative."""
    if z.imag != 0.0 or z.real >= 0.0:
        return None
    if p == q:
        return 1 if abs(z.real + 1.0) <= 1e-12 else None
    d = q - p
    n_est = round(abs(z.real) ** (1.0 / d))
    if n_est < 1:
        return None
    pole = -float(n_est) ** d
    if abs(z.real - pole) <= 1e-12 * abs(pole):
        return int(n_est)
    return None


def modulus_truncated(z: complex | float, p: int, q: int, n_terms: int) -> complex:
    """Partial sum of the first ``n_terms`` terms of m(z; p, q).

    Raises:
        PoleError: if z coincides with a term pole -n**(q-p), n <= n_terms.
    """
    p, q = _validate_exponents(p, q)
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms}")
    z = complex(z)
    hit = _nearest_pole_index(z, p, q)
    if hit is not None and (p == q or hit <= n_terms):
        raise PoleError(f"z = {z} lies on the pole of term n = {hit}")
    total = 0.0 + 0.0j
    chunk = 10**6
    for start in range(1, n_terms + 1, chunk):
        n = np.arange(start, min(start + chunk, n_terms + 1), dtype=float)
        total += complex(np.sum(z / (n**p * z + n**q)))
    return total


def tail_bound(z: complex | float, p: int, q: int, n_terms: int) -> float:
    """Upper bound on the modulus of the tail omitted by ``modulus_truncated``.

    Valid for Re z >= 0, where ``|z/(n**p z + n**q)| <= min(n**-p, |z| n**-q)``;
    the tail is bounded by the integral of the decreasing majorant.  For
    p == q the exact common factor z/(1+z) tightens the bound.

    Raises:
        DomainError: outside the convergence region, or for Re z < 0.
    """
    p, q = _validate_exponents(p, q)
    if not in_convergence_region(p, q):
        raise DomainError(f"series diverges for (p, q) = ({p}, {q})")
    if n_terms < 2:
        raise DomainError(f"tail bound needs n_terms >= 2, got {n_terms}")
    z = complex(z)
    if z.real < 0.0:
        raise DomainError("tail bound is only valid for Re z >= 0")
    if z == 0:
        return 0.0
    n = float(n_terms)
    if p == q:
        return abs(z / (1.0 + z)) * n ** (1 - p) / (p - 1)
    bounds = []
    if p >= 2:
        bounds.append(n ** (1 - p) / (p - 1))
    if q >= 2:
        bounds.append(abs(z) * n ** (1 - q) / (q - 1))
    return min(bounds)


def terms_for_tolerance(z: complex | float, p: int, q: int, tol: float) -> int:
    """Smallest term count whose tail bound is <= tol, capped at MAX_TERMS.

    Raises:
        DomainError: if more than MAX_TERMS terms would be needed.
    """
    p, q = _validate_exponents(p, q)
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    lo, hi = 2, MAX_TERMS
    if tail_bound(z, p, q, hi) > tol:
        raise DomainError(
            f"reaching a tail bound of {tol:g} at z = {z} needs more than "
            f"{MAX_TERMS} terms"
        )
    while lo < hi:
        mid = (lo + hi) // 2
        if tail_bound(z, p, q, mid) <= tol:
            hi = mid
        else:
            lo = mid + 1
    return hi


def modulus_series(
    z: complex | float, p: int, q: int, tol: float = 1e-9
) -> tuple[complex, float]:
    """Series value of m(z; p, q) with a rigorous truncation bound <= tol.

    Plain partial summation cannot reach small tolerances here (the terms
    decay as slowly as 1/n**2), so the tail beyond a modest cutoff N is
    expanded exactly in powers of ``z/n**(q-p)``:

        z/(n**p z + n**q) = sum_j (-1)**j z**(j+1) / n**(q+(q-p)j)  +  rest

    whose partial sums reduce to Euler-Maclaurin zeta tails; the geometric
    remainder obeys ``|1 + z n**(p-q)| >= 1`` for Re z >= 0, giving a fully
    rigorous bound.  Cases q < p go through the exact reciprocity identity
    ``m(z; p, q) = z * m(1/z; q, p)``; p == q uses the exact common factor
    ``z/(1+z)``.  Independent of the closed forms in :func:`modulus_closed`.

    Returns:
        (value, bound): |value - m(z; p, q)| <= bound <= tol, up to
        floating round-off of order 1e-13.
    """
    p, q = _validate_exponents(p, q)
    if not in_convergence_region(p, q):
        raise DomainError(f"series diverges for (p, q) = ({p}, {q})")
    z = complex(z)
    if z == 0:
        return 0.0 + 0.0j, 0.0
    if z.real < 0.0:
        raise DomainError("rigorous series evaluation requires Re z >= 0")
    if p == q:
        n0 = 256
        n = np.arange(1, n0 + 1, dtype=float)
        partial = float(np.sum(n ** (-float(p))))
        tail, terr = zeta_tail(p, n0)
        factor = z / (1.0 + z)
        return factor * (partial + tail), abs(factor) * terr
    if q < p:
        value, bound = modulus_series(1.0 / z, q, p, tol / abs(z))
        return z * value, abs(z) * bound
    d = q - p
    n0 = max(64, math.ceil((4.0 * abs(z)) ** (1.0 / d)))
    if n0 > MAX_TERMS:
        raise DomainError(f"|z| = {abs(z):g} too large for the series evaluator")
    n = np.arange(1, n0 + 1, dtype=float)
    value = complex(np.sum(z / (n**p * z + n**q)))
    bound = 0.0
    z_pow = 1.0 + 0.0j
    for j in range(200):
        tail, terr = zeta_tail(q + d * j, n0)
        remainder = abs(z) ** (j + 1) * (tail + terr)
        if remainder <= 0.5 * tol or j >= 120:
            bound += remainder
            break
        z_pow *= z
        value += (-1) ** j * z_pow * tail
        bound += abs(z_pow) * terr
    return value, bound


def shifted_unity_roots(z: complex | float, q: int) -> list[complex]:
    """All q solutions xi of ``z + (1 + xi)**q = 0``.

    The values 1 + xi_k are the q-th roots of -z: the principal root times
    the q-th roots of unity.  Any branch of the principal root yields the
    same set.
    """
    if q < 2 or q != int(q):
        raise DomainError(f"need an integer order q >= 2, got {q}")
    z = complex(z)
    if z == 0:
        raise DomainError("roots are degenerate at z = 0")
    q = int(q)
    principal = cmath.exp(cmath.log(-z) / q)
    return [
        principal * cmath.exp(2j * math.pi * k / q) - 1.0 for k in range(q)
    ]


#: Exponent pairs with a directly implemented closed form.
CLOSED_FORM_DIRECT = ((0, 2), (2, 0), (1, 2), (2, 1))


def has_closed_form(p: int, q: int) -> bool:
    p, q = _validate_exponents(p, q)
    if (p, q) in CLOSED_FORM_DIRECT:
        return True
    if p == q and p >= 2:
        return True
    if (p == 0 and q >= 3) or (q == 0 and p >= 3):
        return True
    return False


def modulus_closed(z: complex | float, p: int, q: int) -> complex:
    """Closed-form value of the infinite-series modulus M(z; p, q).

    Implemented pairs: (0,2), (2,0), (1,2), (2,1), (p,p) with p >= 2,
    (0,q) with q >= 3 via the digamma root sum, and (q,0) with q >= 3 via
    reciprocity.  The low-order pairs use their explicit forms, e.g.
    ``M(z;0,2) = (-1 + pi sqrt(z) coth(pi sqrt(z)))/2`` and
    ``M(z;1,2) = gamma + psi(1+z)``.

    Raises:
        DomainError: for exponent pairs outside the implemented set.
        PoleError: at the series poles z = -n**(q-p).
    """
    p, q = _validate_exponents(p, q)
    if not has_closed_form(p, q):
        raise DomainError(f"no closed form implemented for (p, q) = ({p}, {q})")
    z = complex(z)
    if z == 0:
        return 0.0 + 0.0j
    hit = _nearest_pole_index(z, p, q)
    if hit is not None:
        raise PoleError(f"M(z;{p},{q}) has a pole at z = {z}")
    if p == q:
        return z * zeta_int(p) / (1.0 + z)
    if (p, q) == (0, 2):
        w = math.pi * cmath.sqrt(z)
        return 0.5 * (-1.0 + w * coth(w))
    if (p, q) == (2, 0):
        rz = cmath.sqrt(z)
        return 0.5 * (-z + math.pi * rz * coth(math.pi / rz))
    if (p, q) == (1, 2):
        return EULER_GAMMA + digamma(1.0 + z)
    if (p, q) == (2, 1):
        return z * (EULER_GAMMA + digamma(1.0 + 1.0 / z))
    if p == 0:
        total = 0.0 + 0.0j
        for xi in shifted_unity_roots(z, q):
            u = 1.0 + xi
            total += digamma(-xi) / u ** (q - 1)
        return -(z / q) * total
    return apply_reciprocity(z, p, q)


def apply_reciprocity(z: complex | float, p: int, q: int) -> complex:
    """Evaluate m(z; p, q) as ``z * m(1/z; q, p)`` from the dual closed form.

    The identity holds termwise for every truncation length, hence for any
    element count including the infinite family.
    """
    z = complex(z)
    if z == 0:
        raise DomainError("reciprocity map is undefined at z = 0")
    return z * modulus_closed(1.0 / z, q, p)


def high_freq_limit(p: int) -> float:
    """Limit of M(z; p, q) for z -> infinity, which is zeta(p).

    Only the springs survive the small-times limit, so the value does not
    depend on q; it is finite only for p >= 2.
    """
    if p != int(p) or p < 2:
        raise DomainError(f"high-frequency limit is finite only for p >= 2, got {p}")
    return zeta_int(int(p))


def physical_modulus(plaw: PowerLawGmb, s: complex | float) -> complex:
    """Dimensional modulus mu*(s) = mu_star * m(s tau*; p, q) of the family."""
    z = complex(s) * plaw.tau_star
    if plaw.n_elements != INFINITE:
        return plaw.mu_star * modulus_truncated(z, plaw.p, plaw.q, int(plaw.n_elements))
    if has_closed_form(plaw.p, plaw.q):
        return plaw.mu_star * modulus_closed(z, plaw.p, plaw.q)
    value, _ = modulus_series(z, plaw.p, plaw.q, tol=1e-10)
    return plaw.mu_star * value


# ---------------------------------------------------------------------------
# serialization

def powerlaw_to_dict(plaw: PowerLawGmb) -> dict:
    n: int | str = "infinite" if plaw.n_elements == INFINITE else int(plaw.n_elements)
    return {
        "p": plaw.p,
        "q": plaw.q,
        "mu_star_pa": plaw.mu_star,
        "eta_star_pas": plaw.eta_star,
        "n_elements": n,
    }


def powerlaw_from_dict(data: dict) -> PowerLawGmb:
    try:
        n_raw = data["n_elements"]
        n = INFINITE if n_raw == "infinite" else int(n_raw)
        return PowerLawGmb(
            p=int(data["p"]),
            q=int(data["q"]),
            mu_star=float(data["mu_star_pa"]),
            eta_star=float(data["eta_star_pas"]),
            n_elements=n,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed power-law model: {exc}") from exc
