"""Scalar special functions: exponential integral E1 (real and complex),
dilogarithm, complementary error function and inverse hyperbolic tangent.

All functions are pure and deterministic. The exponential integral is the
workhorse of every Laplace-transform expression in this package, so it is
implemented directly (series below the switchover, modified-Lentz continued
fraction above) rather than delegated, and cross-checked against independent
oracles in the test suite.
"""

from __future__ import annotations

import cmath
import math

EULER_GAMMA = 0.57721566490153286061

_SERIES_RADIUS_REAL = 1.0
_SERIES_RADIUS_COMPLEX = 4.0
_MAX_ITER = 2000


class SpecfunDomainError(ValueError):
    """Argument outside a function's domain (e.g. E1 on the branch cut)."""


def _e1_series(z):
    # E1(z) = -gamma - log z + sum_{k>=1} (-1)^(k+1) z^k / (k k!)
    p = 1.0 if isinstance(z, float) else complex(1.0)
    s = 0.0 if isinstance(z, float) else complex(0.0)
    for k in range(1, _MAX_ITER):
        p *= -z / k
        term = -p / k
        s += term
        if abs(term) <= 1e-18 * (abs(s) + 1e-300):
            break
    return s


def _e1_cf(z):
    # Even-contracted continued fraction e^{-z}/(z+1 - 1/(z+3 - 4/(z+5 - ...)))
    # evaluated by the modified Lentz algorithm.
    tiny = 1e-300
    b = z + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for j in range(2, _MAX_ITER):
        a = -((j - 1.0) ** 2)
        b = b + 2.0
        d = b + a * d
        if abs(d) < tiny:
            d = tiny
        c = b + a / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    else:
        raise SpecfunDomainError(f"continued fraction for E1 did not converge at {z!r}")
    if isinstance(z, complex):
        return cmath.exp(-z) * h
    return math.exp(-z) * h


def e1_real(x: float) -> float:
    """Exponential integral E1(x) = int_x^inf e^(-t)/t dt for x > 0."""
    if not x > 0.0:
        raise SpecfunDomainError(f"e1_real requires x > 0, got {x}")
    if x <= _SERIES_RADIUS_REAL:
        return -EULER_GAMMA - math.log(x) + _e1_series(x)
    if x > 700.0:
        return 0.0
    return _e1_cf(x)


def e1_complex(z: complex) -> complex:
    """Analytic continuation of E1, principal branch (cut on (-inf, 0])."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0:
        raise SpecfunDomainError(f"e1_complex is undefined on the branch cut, got {z}")
    if abs(z) <= _SERIES_RADIUS_COMPLEX:
        return -EULER_GAMMA - cmath.log(z) + _e1_series(z)
    if z.real > 700.0:
        return complex(0.0)
    return _e1_cf(z)


_PI2_6 = math.pi**2 / 6.0


def dilog(x: float) -> float:
    """Dilogarithm Li2(x) = sum_{k>=1} x^k/k^2, real arguments x <= 1.

    Series on |x| <= 1/2; Euler reflection, Landen and inversion identities
    map everything else into the series region.
    """
    if x > 1.0:
        raise SpecfunDomainError(f"dilog requires x <= 1, got {x}")
    if x == 1.0:
        return _PI2_6
    if x == -1.0:
        return -_PI2_6 / 2.0
    if x < -1.0:
        return -_PI2_6 - 0.5 * math.log(-x) ** 2 - dilog(1.0 / x)
    if x < -0.5:
        return -0.5 * math.log1p(-x) ** 2 - dilog(x / (x - 1.0))
    if x > 0.5:
        return _PI2_6 - math.log(x) * math.log1p(-x) - dilog(1.0 - x)
    if x == 0.0:
        return 0.0
    s = 0.0
    p = 1.0
    for k in range(1, _MAX_ITER):
        p *= x
        term = p / (k * k)
        s += term
        if abs(term) <= 1e-18 * (abs(s) + 1e-300):
            break
    return s


def erfc(x: float) -> float:
    """Complementary error function; underflows to 0 past ~|x| = 27."""
    return math.erfc(x)


def arctanh(x: float) -> float:
    """Inverse hyperbolic tangent, |x| < 1."""
    if not -1.0 < x < 1.0:
        raise SpecfunDomainError(f"arctanh requires |x| < 1, got {x}")
    return math.atanh(x)
