"""Generalized Maxwell body rheologies and homogeneous-sphere Love numbers.

Laplace-domain complex shear moduli of finite and infinite (power-law)
parallel Maxwell networks, Love numbers of the homogeneous incompressible
self-gravitating sphere, and time-domain inversion by Heaviside expansion
or by the Post-Widder sequence with analytically exact derivatives.
"""

from .errors import (
    BracketingError,
    ConvergenceError,
    DomainError,
    GmbLoveError,
    PoleError,
    SchemaError,
)
from .love import (
    LoveProblem,
    RelaxationMode,
    RelaxationSolution,
    SphereModel,
    earth_like_sphere,
    heaviside_load_response,
    impulse_response,
    lambda_squared,
    load_problem,
    love_laplace,
    pq_polynomials,
    problem_from_dict,
    problem_to_dict,
    random_love_problem,
    relaxation_spectrum,
)
from .postwidder import (
    DerivativeStack,
    PwConfig,
    PwResult,
    loading_term_derivatives,
    love_derivative,
    pw_approximant,
    pw_invert,
)
from .powerlaw import (
    INFINITE,
    PowerLawGmb,
    apply_reciprocity,
    high_freq_limit,
    modulus_closed,
    modulus_series,
    modulus_truncated,
    pole_location,
    powerlaw_from_dict,
    powerlaw_to_dict,
    shifted_unity_roots,
    tail_bound,
)
from .rheology import (
    GmbModel,
    MaxwellElement,
    complex_modulus,
    creep_compliance,
    gmb_from_dict,
    gmb_to_dict,
    load_gmb,
    merge_duplicate_taus,
    modulus_derivative,
    modulus_poles,
    modulus_zeros,
    random_gmb,
    relaxation_modulus,
)
from .special import EULER_GAMMA, bell_incomplete, coth, digamma, zeta_int

__version__ = "0.1.0"

__all__ = [
    "BracketingError",
    "ConvergenceError",
    "DerivativeStack",
    "DomainError",
    "EULER_GAMMA",
    "GmbLoveError",
    "GmbModel",
    "INFINITE",
    "LoveProblem",
    "MaxwellElement",
    "PoleError",
    "PowerLawGmb",
    "PwConfig",
    "PwResult",
    "RelaxationMode",
    "RelaxationSolution",
    "SchemaError",
    "SphereModel",
    "apply_reciprocity",
    "bell_incomplete",
    "complex_modulus",
    "coth",
    "creep_compliance",
    "digamma",
    "earth_like_sphere",
    "gmb_from_dict",
    "gmb_to_dict",
    "heaviside_load_response",
    "high_freq_limit",
    "impulse_response",
    "lambda_squared",
    "load_gmb",
    "load_problem",
    "loading_term_derivatives",
    "love_derivative",
    "love_laplace",
    "merge_duplicate_taus",
    "modulus_closed",
    "modulus_derivative",
    "modulus_poles",
    "modulus_series",
    "modulus_truncated",
    "modulus_zeros",
    "pole_location",
    "powerlaw_from_dict",
    "powerlaw_to_dict",
    "pq_polynomials",
    "problem_from_dict",
    "problem_to_dict",
    "pw_approximant",
    "pw_invert",
    "random_gmb",
    "random_love_problem",
    "relaxation_modulus",
    "relaxation_spectrum",
    "shifted_unity_roots",
    "tail_bound",
    "zeta_int",
]
