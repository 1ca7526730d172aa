import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmblove import EULER_GAMMA, DomainError, PoleError, bell_incomplete, coth, digamma, zeta_int
from gmblove.special import bell_triangle, zeta_tail

from oracles import bell_by_enumeration, coth_exp, digamma_series, zeta_partial_tail


# ---------------------------------------------------------------------------
# digamma

def test_digamma_at_one():
    assert digamma(1.0) == pytest.approx(-EULER_GAMMA, rel=1e-14)


def test_digamma_at_two():
    assert digamma(2.0) == pytest.approx(1.0 - EULER_GAMMA, rel=1e-14)


def test_digamma_half_identity_and_series_oracle():
    exact = -EULER_GAMMA - 2.0 * math.log(2.0)
    value = digamma(0.5)
    assert value.imag == 0.0
    assert value.real == pytest.approx(exact, rel=1e-12)
    oracle, bound = digamma_series(0.5, n_terms=10**6)
    assert abs(value - oracle) <= bound + 1e-11


def test_digamma_recurrence_complex_grid():
    rng = np.random.default_rng(1)
    checked = 0
    while checked < 100:
        z = complex(rng.uniform(-50, 50), rng.uniform(-50, 50))
        if abs(z) > 50 or abs(z) < 1e-2:
            continue
        if z.imag == 0.0 and z.real <= 0:
            continue
        lhs = digamma(z + 1.0) - digamma(z)
        assert abs(lhs - 1.0 / z) <= 1e-12 * max(1.0, abs(1.0 / z))
        checked += 1


def test_digamma_reflection():
    rng = np.random.default_rng(2)
    for _ in range(50):
        z = complex(rng.uniform(-20, 20), rng.uniform(0.1, 20))
        lhs = digamma(1.0 - z) - digamma(z)
        rhs = math.pi / np.tan(math.pi * complex(z))
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


@pytest.mark.parametrize("z", [0.0, -1.0, -2.0, -17.0])
def test_digamma_poles(z):
    with pytest.raises(PoleError):
        digamma(z)


# ---------------------------------------------------------------------------
# zeta

def test_zeta_basel_identities():
    assert zeta_int(2) == pytest.approx(math.pi**2 / 6.0, rel=1e-14)
    assert zeta_int(4) == pytest.approx(math.pi**4 / 90.0, rel=1e-14)


def test_zeta_three_frozen():
    # partial sum to 1e6 terms plus integral-bracketed tail
    oracle, bound = zeta_partial_tail(3, n_terms=10**6)
    assert bound < 1e-12
    assert zeta_int(3) == pytest.approx(oracle, abs=bound + 1e-13)
    assert zeta_int(3) == pytest.approx(1.2020569031595943, rel=1e-14)


@pytest.mark.parametrize("p", range(2, 11))
def test_zeta_matches_partial_sum_oracle(p):
    oracle, bound = zeta_partial_tail(p, n_terms=10**6)
    assert abs(zeta_int(p) - oracle) <= bound + 1e-12


@pytest.mark.parametrize("p", [1, 0, -3])
def test_zeta_domain_error(p):
    with pytest.raises(DomainError):
        zeta_int(p)


@pytest.mark.parametrize("e", [2, 3, 5, 9])
@pytest.mark.parametrize("n", [8, 64, 512])
def test_zeta_tail_bound_holds(e, n):
    # the bound covers truncation; allow double round-off of the value itself
    value, bound = zeta_tail(e, n)
    with mpmath.workdps(60):
        truth = float(mpmath.zeta(e) - mpmath.nsum(lambda k: k**-e, [1, n]))
    assert abs(value - truth) <= bound + 8e-16 * abs(value)


# ---------------------------------------------------------------------------
# coth

def test_coth_saturates_for_large_real_part():
    assert coth(25.0) == 1.0
    assert coth(complex(30.0, 5.0)) == 1.0
    assert coth(complex(-25.0, 1.0)) == -1.0


def test_coth_laurent_residual_near_zero():
    # coth(z) - 1/z - z/3 = -z**3/45 + O(z**5)
    for z in (0.05, 0.1, 0.2, complex(0.1, 0.15)):
        z = complex(z)
        residual = coth(z) - 1.0 / z - z / 3.0
        ratio = residual / z**3
        assert abs(ratio + 1.0 / 45.0) < 0.01


def test_coth_at_pi_vs_exponential_oracle():
    value = coth(math.pi)
    assert value == pytest.approx(coth_exp(math.pi), rel=1e-14)
    assert value.real == pytest.approx(1.0037418731973213, rel=1e-14)


def test_coth_pole_at_zero():
    with pytest.raises(PoleError):
        coth(0.0)


# ---------------------------------------------------------------------------
# Bell polynomials

def test_bell_trivial_cases():
    assert bell_incomplete(0, 0, [0]) == 1
    assert bell_incomplete(4, 0, [0, 0, 0, 0, 0]) == 0
    assert bell_incomplete(1, 1, [7]) == 7
    # B_{2,1}(x1, x2) = x2 (only j2 = 1 solves j1+j2 = 1, j1+2 j2 = 2)
    assert bell_incomplete(2, 1, [3, 5]) == 5
    # B_{3,2}(x1, x2) = 3 x1 x2
    assert bell_incomplete(3, 2, [2, 7]) == 42


def test_bell_known_row():
    # B_{6,3}(x1..x4) = 15 x4 x1^2 + 60 x3 x2 x1 + 15 x2^3
    x = [1, 2, 3, 4]
    expected = 15 * 4 * 1 + 60 * 3 * 2 * 1 + 15 * 2**3
    assert bell_incomplete(6, 3, x) == expected


def test_bell_argument_length_mismatch():
    with pytest.raises(DomainError):
        bell_incomplete(3, 2, [1, 2, 3])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=8, max_size=8))
def test_bell_recurrence_equals_enumeration(seeds):
    """Recurrence and partition enumeration agree exactly on integer seeds."""
    table = bell_triangle(8, seeds)
    for n in range(9):
        for k in range(n + 1):
            expected = bell_by_enumeration(n, k, seeds)
            assert table[n][k] == expected


def test_bell_exact_with_fractions():
    seeds = [Fraction(1, 3), Fraction(-2, 5), Fraction(7, 2)]
    assert bell_incomplete(3, 1, seeds) == Fraction(7, 2)
    assert bell_incomplete(3, 2, seeds[:2]) == 3 * Fraction(1, 3) * Fraction(-2, 5)
