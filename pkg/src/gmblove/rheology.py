"""Finite generalized Maxwell bodies (parallel networks of Maxwell elements).

A Maxwell element is a spring (rigidity ``mu``) in series with a dashpot
(viscosity ``eta``); its Laplace-domain shear modulus is
``mu*s/(s + mu/eta)``.  A generalized Maxwell body (GMB) is a parallel
assembly of such elements, so its complex shear modulus is the sum of the
element moduli.  This module provides the assembly, the modulus and its
derivatives of all orders, the pole/zero structure on the negative real
axis, and the material functions (creep compliance, relaxation modulus).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import BracketingError, PoleError, SchemaError

#: Relative tolerance under which two relaxation times are considered equal.
TAU_MERGE_RTOL = 1e-12


@dataclass(frozen=True)
class MaxwellElement:
    """Spring-dashpot pair: rigidity ``mu`` [Pa] and viscosity ``eta`` [Pa s]."""

    mu: float
    eta: float

    def __post_init__(self):
        if not (self.mu > 0 and math.isfinite(self.mu)):
            raise SchemaError(f"rigidity must be positive and finite, got {self.mu}")
        if not (self.eta > 0 and math.isfinite(self.eta)):
            raise SchemaError(f"viscosity must be positive and finite, got {self.eta}")

    @property
    def tau(self) -> float:
        """Maxwell relaxation time eta/mu [s]."""
        return self.eta / self.mu


@dataclass(frozen=True)
class GmbModel:
    """Parallel assembly of Maxwell elements.  Immutable after construction."""

    elements: tuple[MaxwellElement, ...]

    def __post_init__(self):
        elements = tuple(self.elements)
        if len(elements) < 1:
            raise SchemaError("a GMB needs at least one element")
        object.__setattr__(self, "elements", elements)

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def _mu(self) -> np.ndarray:
        return np.array([e.mu for e in self.elements], dtype=float)

    @cached_property
    def _inv_tau(self) -> np.ndarray:
        return np.array([1.0 / e.tau for e in self.elements], dtype=float)

    @property
    def taus(self) -> tuple[float, ...]:
        return tuple(e.tau for e in self.elements)

    @property
    def total_rigidity(self) -> float:
        """Instantaneous (s -> infinity) modulus, sum of rigidities."""
        return float(self._mu.sum())


def merge_duplicate_taus(model: GmbModel, rtol: float = TAU_MERGE_RTOL) -> GmbModel:
    """Collapse elements with coincident relaxation times into one element.

    Two parallel Maxwell elements with equal tau add exactly:
    ``mu1*s/(s+1/tau) + mu2*s/(s+1/tau) = (mu1+mu2)*s/(s+1/tau)``.
    Elements whose taus agree within ``rtol`` are replaced by a single
    element with summed rigidity and the rigidity-weighted mean tau.
    The result is sorted by ascending tau and has pairwise-distinct taus,
    which the root-finding machinery relies on.
    """
    ordered = sorted(model.elements, key=lambda e: e.tau)
    groups: list[list[MaxwellElement]] = [[ordered[0]]]
    for elem in ordered[1:]:
        if elem.tau - groups[-1][-1].tau <= rtol * elem.tau:
            groups[-1].append(elem)
        else:
            groups.append([elem])
    merged = []
    for group in groups:
        if len(group) == 1:
            merged.append(group[0])
            continue
        mu = sum(e.mu for e in group)
        tau = sum(e.mu * e.tau for e in group) / mu
        merged.append(MaxwellElement(mu=mu, eta=mu * tau))
    return GmbModel(elements=tuple(merged))


def complex_modulus(model: GmbModel, s: complex | float) -> complex:
    """Complex shear modulus ``sum_n mu_n s / (s + 1/tau_n)`` of the GMB.

    Raises:
        PoleError: if s coincides exactly with a pole -1/tau_n.
    """
    s = complex(s)
    den = s + model._inv_tau
    if np.any(den == 0):
        raise PoleError(f"modulus pole at s = {s}")
    return complex(np.sum(model._mu * s / den))


def modulus_derivative(model: GmbModel, s: complex | float, k: int) -> complex:
    """k-th derivative of the complex shear modulus with respect to s.

    For k >= 1 this is ``(-1)**(k+1) k! sum_n (mu_n/tau_n)/(s+1/tau_n)**(k+1)``;
    k = 0 returns the modulus itself.
    """
    if k < 0:
        raise ValueError(f"derivative order must be >= 0, got {k}")
    if k == 0:
        return complex_modulus(model, s)
    s = complex(s)
    den = s + model._inv_tau
    if np.any(den == 0):
        raise PoleError(f"modulus pole at s = {s}")
    sign = -1.0 if k % 2 == 0 else 1.0  # (-1)**(k+1)
    return complex(sign * math.factorial(k) * np.sum(model._mu * model._inv_tau / den ** (k + 1)))


def modulus_real(model: GmbModel, s: float) -> float:
    """Modulus restricted to the real axis (no pole check; may be +-huge)."""
    return float(np.sum(model._mu * s / (s + model._inv_tau)))


def modulus_poles(model: GmbModel) -> list[float]:
    """Poles -1/tau_n of the modulus, ascending (all strictly negative)."""
    merged = merge_duplicate_taus(model)
    return sorted(-it for it in merged._inv_tau)


def _bracketed_root(f: Callable[[float], float], a: float, b: float) -> float:
    """Root of f in (a, b), where f -> -inf at a+ and f is positive near b.

    The left endpoint is always a pole of f; the right endpoint is either a
    pole (f -> +inf) or a directly evaluable point with f(b) > 0.  Pole
    endpoints are nudged inward by a relative 1e-13, shrinking adaptively
    until the sign shows; Brent's method then refines to machine precision.
    """
    gap = b - a
    step = 1e-13 * max(abs(a), gap)
    while True:
        lo = a + step
        if lo < b and f(lo) < 0.0:
            break
        step *= 0.1
        if a + step <= a:
            raise BracketingError(f"no negative-sign point right of {a}")
    if b == 0.0 and f(b) > 0.0:
        hi = b
    else:
        step = 1e-13 * max(abs(b), gap)
        while True:
            hi = b - step
            if hi > lo and f(hi) > 0.0:
                break
            step *= 0.1
            if b - step >= b:
                raise BracketingError(f"no positive-sign point left of {b}")
    return brentq(f, lo, hi, xtol=5e-324, rtol=4 * np.finfo(float).eps)


def modulus_zeros(model: GmbModel) -> list[float]:
    """The N real zeros of the modulus, ascending; the largest is s = 0.

    The modulus is strictly increasing between consecutive poles and runs
    from -inf to +inf across each gap, so each of the N-1 gaps holds
    exactly one zero, found by bracketed Brent iteration; s = 0 is always
    a zero.  Zeros and poles strictly interlace.
    """
    merged = merge_duplicate_taus(model)
    poles = modulus_poles(merged)
    f = lambda s: modulus_real(merged, s)
    zeros = [_bracketed_root(f, a, b) for a, b in zip(poles[:-1], poles[1:])]
    zeros.append(0.0)
    return zeros


def creep_compliance(model: GmbModel, s: complex | float) -> complex:
    """Creep compliance J(s) = 1/(2 s mu(s)).

    Raises:
        PoleError: at s = 0, at the modulus poles, and at the modulus zeros.
    """
    s = complex(s)
    if s == 0:
        raise PoleError("creep compliance is singular at s = 0")
    mu = complex_modulus(model, s)
    if mu == 0:
        raise PoleError(f"modulus zero at s = {s}")
    return 1.0 / (2.0 * s * mu)


def relaxation_modulus(model: GmbModel, s: complex | float) -> complex:
    """Relaxation modulus G(s) = 2 mu(s)/s; J(s)*G(s) = 1/s**2."""
    s = complex(s)
    if s == 0:
        raise PoleError("relaxation modulus is singular at s = 0")
    return 2.0 * complex_modulus(model, s) / s


# ---------------------------------------------------------------------------
# serialization and sampling

def gmb_to_dict(model: GmbModel) -> dict:
    return {"elements": [{"mu_pa": e.mu, "eta_pas": e.eta} for e in model.elements]}


def gmb_from_dict(data: dict) -> GmbModel:
    try:
        elements = tuple(
            MaxwellElement(mu=float(e["mu_pa"]), eta=float(e["eta_pas"]))
            for e in data["elements"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed GMB model: {exc}") from exc
    return GmbModel(elements=elements)


def load_gmb(path: str) -> GmbModel:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON in {path}: {exc}") from exc
    return gmb_from_dict(data)


def random_gmb(
    rng: np.random.Generator,
    n_elements: int,
    mu_scale: float = 1.0,
    mu_decades: tuple[float, float] = (-3.0, 3.0),
    tau_decades: tuple[float, float] = (-3.0, 3.0),
) -> GmbModel:
    """Random GMB with log-uniform rigidities and relaxation times."""
    mu = mu_scale * 10.0 ** rng.uniform(*mu_decades, size=n_elements)
    tau = 10.0 ** rng.uniform(*tau_decades, size=n_elements)
    return GmbModel(
        elements=tuple(
            MaxwellElement(mu=float(m), eta=float(m * t)) for m, t in zip(mu, tau)
        )
    )
