"""Limiting laws for cycles and components of random mappings.

Scalings: cycle lengths and the cyclic-point count N live on the sqrt(n)
scale; component sizes live on the n scale.  Three regimes for the law of
N/sqrt(n) are supported:

* rayleigh     nu exp(-nu^2/2)                   unconstrained mappings
* halfnormal   sqrt(2/pi) exp(-nu^2/2)           component count fixed or
                                                 growing slower than log n
* pavlov(c)    (2^c Gamma(c)/(sqrt(2 pi) Gamma(2c))) nu^(2c) e^(-nu^2/2)
               component count ~ c log n; c = 1/2 recovers rayleigh and the
               c -> 0 limit recovers halfnormal

Conditioned on N = nu sqrt(n), the cyclic points form a uniform random
permutation, so P{r-th longest cycle <= lambda sqrt(n) | N} is the rank-r
Dickman value rho_r(nu/lambda); mixing against the regime density yields the
unconditional CDFs and joint densities below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre as _leg

from . import dde
from .specfun import SpecfunDomainError

__all__ = [
    "Regime",
    "perm_longest_cycle_cdf",
    "largest_component_cdf",
    "mapping_longest_cycle_cdf",
    "joint_density",
    "cyclic_points_density",
    "connected_cycle_cdf",
]

_NU_CUT = 8.75  # exp(-nu^2/2) < 3e-17 beyond; truncation noted in error budget


@dataclass(frozen=True)
class Regime:
    """Which limiting density of N/sqrt(n) applies."""

    tag: str
    c: float | None = None

    def __post_init__(self):
        if self.tag not in ("rayleigh", "halfnormal", "pavlov"):
            raise ValueError(f"unknown regime {self.tag!r}")
        if self.tag == "pavlov":
            if self.c is None or self.c < 0.0:
                raise ValueError(f"pavlov regime requires c >= 0, got {self.c}")

    @classmethod
    def rayleigh(cls) -> "Regime":
        return cls(tag="rayleigh")

    @classmethod
    def halfnormal(cls) -> "Regime":
        return cls(tag="halfnormal")

    @classmethod
    def pavlov(cls, c: float) -> "Regime":
        return cls(tag="pavlov", c=float(c))


def cyclic_points_density(nu, regime: Regime):
    """Limiting density of N/sqrt(n) under the regime; nu > 0."""
    arr = np.asarray(nu, dtype=float)
    if np.any(arr <= 0.0):
        raise SpecfunDomainError("cyclic-point density defined for nu > 0")
    gauss = np.exp(-arr * arr / 2.0)
    if regime.tag == "rayleigh":
        out = arr * gauss
    elif regime.tag == "halfnormal" or (regime.tag == "pavlov" and regime.c == 0.0):
        # the c -> 0 limit of the pavlov family is taken analytically: the
        # Gamma(c)/Gamma(2c) ratio tends to 2, avoiding the poles at c = 0
        out = math.sqrt(2.0 / math.pi) * gauss
    else:
        c = regime.c
        log_coef = c * math.log(2.0) + math.lgamma(c) - math.lgamma(2.0 * c)
        coef = math.exp(log_coef) / math.sqrt(2.0 * math.pi)
        out = coef * arr ** (2.0 * c) * gauss
    return float(out) if np.isscalar(nu) else out


@lru_cache(maxsize=16)
def _rank_solution(r: int):
    return dde.dickman_solution(r)


def perm_longest_cycle_cdf(a: float, r: int = 1) -> float:
    """Limiting P{r-th longest cycle of a permutation <= a n} = rho_r(1/a)."""
    if not 0.0 < a <= 1.0:
        raise SpecfunDomainError(f"requires a in (0, 1], got {a}")
    if r < 1:
        raise ValueError(f"rank must be >= 1, got {r}")
    return float(_rank_solution(r)(1.0 / a))


def largest_component_cdf(a: float) -> float:
    """Limiting P{largest component <= a n} = sqrt(1/a) sigma(1/a)."""
    if not 0.0 < a <= 1.0:
        raise SpecfunDomainError(f"requires a in (0, 1], got {a}")
    sol = dde.watterson_solution()
    return float(dde.sigma_tilde(sol, 1.0 / a))


def connected_cycle_cdf(b: float) -> float:
    """CDF of the cycle length of a connected mapping: half-normal law."""
    if b <= 0.0:
        return 0.0
    return math.erf(b / math.sqrt(2.0))


@lru_cache(maxsize=8)
def _gl_nodes(n: int):
    return _leg.leggauss(n)


def _rank_values(sol, x):
    """rho_r at possibly deep arguments: treat anything past the solved
    domain as 0 (the solution there is below the Gaussian weight's noise)."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = x <= sol.x_max
    if np.any(inside):
        out[inside] = sol(x[inside])
    return out


def mapping_longest_cycle_cdf(b: float, r: int = 1, regime: Regime = Regime.rayleigh()) -> float:
    """Limiting P{r-th longest cycle of a mapping <= b sqrt(n)}.

    Integral of the regime's N-density against rho_r(nu/b), with panels split
    at the integrand's kink abscissae nu = b, 2b, ... and truncated where the
    Gaussian weight is below 3e-17.
    """
    if b <= 0.0:
        raise SpecfunDomainError(f"requires b > 0, got {b}")
    if r < 1:
        raise ValueError(f"rank must be >= 1, got {r}")
    sol = _rank_solution(r)
    kinks = [k * b for k in range(1, int(_NU_CUT / b) + 1)]
    edges = np.unique(np.concatenate([[0.0], kinks, [_NU_CUT]]))
    edges = edges[edges <= _NU_CUT]
    if edges[-1] < _NU_CUT:
        edges = np.append(edges, _NU_CUT)
    x, w = _gl_nodes(32)
    total = 0.0
    for lo, hi in zip(edges, edges[1:]):
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        nu = mid + half * x
        total += half * float(
            np.sum(w * cyclic_points_density(nu, regime) * _rank_values(sol, nu / b))
        )
    return min(max(total, 0.0), 1.0)


@dataclass(frozen=True)
class JointPoint:
    """Scaled (cycle length, cyclic-point count) coordinates, units sqrt(n)."""

    lam: float
    nu: float


def joint_density(p: JointPoint, r: int = 1, regime: Regime = Regime.rayleigh()) -> float:
    """Joint density of (r-th longest cycle, N)/sqrt(n) under the regime.

    w(nu) [rho_r - rho_{r-1}](nu/lambda - 1) / lambda on 0 < lambda < nu,
    with rho_0 identically 0; zero outside the support.
    """
    if p.lam <= 0.0 or p.nu <= 0.0:
        raise SpecfunDomainError(f"joint density requires positive coordinates, got {p}")
    if r < 1:
        raise ValueError(f"rank must be >= 1, got {r}")
    if p.nu <= p.lam:
        return 0.0
    arg = p.nu / p.lam - 1.0
    hi = _rank_solution(r)
    val = float(hi(arg)) if arg <= hi.x_max else 0.0
    if r > 1:
        lo = _rank_solution(r - 1)
        val -= float(lo(arg)) if arg <= lo.x_max else 0.0
    return cyclic_points_density(p.nu, regime) * val / p.lam
