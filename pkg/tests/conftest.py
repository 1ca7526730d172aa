import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make `oracles` importable

from gmblove import GmbModel, LoveProblem, MaxwellElement, SphereModel


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def unit_sphere():
    """Sphere with surface gravity 1 and stress ratio mu_e/(rho g a) = 1."""
    return SphereModel(rho=1.0, radius=1.0, mu_e=1.0, newton_g=3.0 / (4.0 * math.pi))


@pytest.fixture
def canonical_problem(unit_sphere):
    """N = 1 problem with lam2 * mu' = 1 and tau = 1 (degree 2).

    Exact solution: rate -1/2, elastic amplitude 1/2, modal amplitude 1/4.
    """
    lam2 = 9.5  # (2*4 + 8 + 3)/2 * 1
    mu = 1.0 / lam2
    gmb = GmbModel(elements=(MaxwellElement(mu=mu, eta=mu),))
    return LoveProblem(sphere=unit_sphere, degree=2, fluid_limit=1.0, gmb=gmb)
