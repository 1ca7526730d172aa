"""Special-function kernel: digamma, integer zeta, coth, Bell polynomials.

Everything here is scalar and pure.  The functions accept ordinary Python
numbers; :func:`bell_incomplete` and :func:`bell_triangle` are generic over
the numeric type of their seeds (int, Fraction, float, complex, mpmath
floats), which the higher-order derivative machinery relies on.
"""

from __future__ import annotations

import cmath
import math
from math import comb
from typing import Sequence

from .errors import DomainError, PoleError

#: Euler-Mascheroni constant to double precision.
EULER_GAMMA = 0.57721566490153286060651209008240243104215933593992

# B_{2j}/(2j) for j = 1..8, the coefficients of the asymptotic tail of psi:
# psi(z) ~ ln z - 1/(2z) - sum_j c_j / z^(2j).
_PSI_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
)

# Re z threshold above which the asymptotic series is accurate to ~1e-16.
_PSI_SHIFT = 14.0


def digamma(z: complex | float) -> complex:
    """Digamma function psi(z) for complex argument.

    Uses upward recurrence ``psi(z+1) = psi(z) + 1/z`` to push the argument
    to ``Re z >= 14``, then the Stirling-type asymptotic series; arguments
    with ``Re z < 0.5`` are first mapped through the reflection formula
    ``psi(1-z) - psi(z) = pi*cot(pi*z)``.  Accurate to at least 12
    significant digits away from the poles.

    Raises:
        PoleError: at the poles z = 0, -1, -2, ...
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"digamma requires a finite argument, got {z}")
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"digamma pole at z = {z.real:g}")
    if z.real < 0.5:
        return digamma(1.0 - z) - math.pi / cmath.tan(math.pi * z)
    acc = 0.0 + 0.0j
    w = z
    while w.real < _PSI_SHIFT:
        acc -= 1.0 / w
        w += 1.0
    inv2 = 1.0 / (w * w)
    total = cmath.log(w) - 0.5 / w
    p = inv2
    for c in _PSI_ASYMPTOTIC:
        total -= c * p
        p *= inv2
    return acc + total


# Bernoulli numbers B_2..B_8 enter the Euler-Maclaurin tail below.
_B2, _B4, _B6, _B8 = 1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0


def _pochhammer(x: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= x + i
    return out


def zeta_tail(p: int, n: int) -> tuple[float, float]:
    """Tail ``sum_{k>n} k**-p`` with a rigorous truncation-error bound.

    Euler-Maclaurin with correction terms through B_6; the returned bound
    is the magnitude of the first omitted Bernoulli term, which brackets
    the remainder because ``x**-p`` is completely monotone.  Floating-point
    round-off (~eps times the tail) is not included in the bound.

    Returns:
        (tail_estimate, bound) with |estimate - true tail| <= bound.
    """
    if p < 2:
        raise DomainError(f"zeta tail requires exponent >= 2, got {p}")
    if n < 1:
        raise DomainError(f"tail start must be >= 1, got {n}")
    m = float(n + 1)
    e = float(p)
    value = m ** (1.0 - e) / (e - 1.0) + 0.5 * m**-e
    value += (_B2 / 2.0) * e * m ** (-e - 1.0)
    value += (_B4 / 24.0) * _pochhammer(e, 3) * m ** (-e - 3.0)
    value += (_B6 / 720.0) * _pochhammer(e, 5) * m ** (-e - 5.0)
    bound = abs(_B8) / 40320.0 * _pochhammer(e, 7) * m ** (-e - 7.0)
    return value, bound


def zeta_int(p: int) -> float:
    """Riemann zeta at an integer argument p >= 2, to ~1e-15 relative.

    Partial sum plus the Euler-Maclaurin tail of :func:`zeta_tail`.

    Raises:
        DomainError: for p < 2 (the series diverges or is not used here).
    """
    if p != int(p):
        raise DomainError(f"zeta_int expects an integer, got {p!r}")
    p = int(p)
    if p < 2:
        raise DomainError(f"zeta_int requires p >= 2, got {p}")
    n = 64
    partial = 0.0
    for k in range(n, 0, -1):  # ascending magnitude for clean summation
        partial += float(k) ** -p
    tail, _ = zeta_tail(p, n)
    return partial + tail


def coth(z: complex | float) -> complex:
    """Hyperbolic cotangent, stable for small |z| and large |Re z|.

    For |Re z| > 20 the value saturates to +-1 (the correction is below
    double-precision resolution); otherwise ``1/tanh(z)`` is used, which
    is free of cancellation near z = 0 where coth ~ 1/z + z/3.

    Raises:
        PoleError: at the poles z = i*k*pi (detected as tanh(z) == 0).
    """
    z = complex(z)
    if z.real > 20.0:
        return 1.0 + 0.0j
    if z.real < -20.0:
        return -1.0 + 0.0j
    t = cmath.tanh(z)
    if t == 0:
        raise PoleError(f"coth pole at z = {z}")
    return 1.0 / t


def bell_triangle(n: int, x: Sequence) -> list[list]:
    """Table of incomplete Bell polynomials B_{m,k}(x_1..x_{m-k+1}), m,k <= n.

    Built by the standard recurrence

        B_{m,k} = sum_{i=1}^{m-k+1} C(m-1, i-1) * x_i * B_{m-i,k-1}

    with B_{0,0} = 1 and B_{m,0} = 0 for m >= 1.  The recurrence is exact
    in the seed arithmetic: integer seeds give integers, mpmath seeds stay
    in the active precision.  Entry [m][k] needs seeds x_1..x_{m-k+1}, so
    ``x`` must supply at least n values for the full table.
    """
    if n < 0:
        raise DomainError(f"negative Bell order {n}")
    if n > 0 and len(x) < n:
        raise DomainError(f"need {n} seed values for the order-{n} table, got {len(x)}")
    table: list[list] = [[0] * (n + 1) for _ in range(n + 1)]
    table[0][0] = 1
    for m in range(1, n + 1):
        for k in range(1, m + 1):
            acc = 0
            for i in range(1, m - k + 2):
                acc = acc + comb(m - 1, i - 1) * x[i - 1] * table[m - i][k - 1]
            table[m][k] = acc
    return table


def bell_incomplete(n: int, k: int, x: Sequence):
    """Incomplete (second-kind) Bell polynomial B_{n,k}(x_1,...,x_{n-k+1}).

    Raises:
        DomainError: if k is outside [0, n] or len(x) != n - k + 1.
    """
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"invalid Bell indices (n={n}, k={k})")
    if len(x) != n - k + 1:
        raise DomainError(
            f"B_({n},{k}) takes {n - k + 1} arguments, got {len(x)}"
        )
    if k == 0:
        return 1 if n == 0 else 0
    # The triangle needs seeds x_1..x_n; entries beyond x_{n-k+1} never
    # reach row (n, k), so padding with zeros is inert.
    seeds = list(x) + [0] * (k - 1)
    return bell_triangle(n, seeds)[n][k]
