"""Moment constants of the longest-cycle laws.

The building block is

    G(r, h) = 1/(h! (r-1)!) int_0^inf x^(h-1) E(x)^(r-1) exp(-E(x) - x) dx

with E the exponential integral: G(r, 1) is the limiting mean of the r-th
longest cycle of a permutation divided by its size (r = 1 is the
Golomb-Dickman constant).  For mappings the cycle scale is N, so the regime
moments follow from E(N) and E(N^2):

    rayleigh    mean = sqrt(pi/2) G(r,1),  var = 2 G(r,2) - (pi/2) G(r,1)^2
    halfnormal  mean = sqrt(2/pi) G(r,1),  var = G(r,2) - (2/pi) G(r,1)^2

together with the cross-correlation between the r-th cycle and N, and the
mode/median solvers for the rank-1 law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre as _leg
from scipy.optimize import brentq

from . import distributions
from .distributions import Regime
from .specfun import e1_real

__all__ = [
    "MomentReport",
    "g_constant",
    "cross_rank_moment",
    "moment_table",
    "mode_lambda1",
    "median_lambda",
]

_RANKS = (1, 2, 3, 4)


@lru_cache(maxsize=8)
def _gl(n: int):
    return _leg.leggauss(n)


def _panels(f, edges, nodes=48):
    x, w = _gl(nodes)
    total = 0.0
    for lo, hi in zip(edges, edges[1:]):
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        total += half * float(np.sum(w * f(mid + half * x)))
    return total


@lru_cache(maxsize=64)
def g_constant(r: int, h: int, tol: float = 1e-12) -> float:
    """G(r, h) by panel quadrature.

    Near zero the integrand behaves like x^(h-1) (-ln x)^(r-1) e^gamma x; the
    substitution x = e^(-u) maps that tail to u^(r-1) e^(-(h+1)u), tamed on
    exponentially spaced panels.  The upper tail is cut where e^(-x) E(x)^(r-1)
    is below 1e-18.
    """
    if r not in _RANKS or h not in (1, 2):
        raise ValueError(f"supported ranks 1..4 and heights 1..2, got r={r} h={h}")
    if tol <= 0.0:
        raise ValueError("tol must be positive")

    def integrand(x):
        x = np.asarray(x)
        e1 = np.array([e1_real(float(t)) for t in x])
        val = x ** (h - 1) * np.exp(-e1 - x)
        if r > 1:
            val = val * e1 ** (r - 1)
        return val

    def integrand_log(u):
        # x = exp(-u) for the (0, 1/2] end
        x = np.exp(-np.asarray(u))
        e1 = np.array([e1_real(float(t)) for t in x])
        val = np.exp(-h * np.asarray(u)) * np.exp(-e1 - x)
        if r > 1:
            val = val * e1 ** (r - 1)
        return val

    lower = _panels(integrand_log, [math.log(2.0), 4.0, 8.0, 16.0, 32.0, 48.0])
    upper = _panels(integrand, [0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 28.0, 45.0])
    return (lower + upper) / (math.factorial(h) * math.factorial(r - 1))


@lru_cache(maxsize=16)
def cross_rank_moment(r: int, s: int) -> float:
    """E(V_r V_s) for the scaled r-th and s-th longest permutation cycles.

    The ranked cycle fractions are the points of the Poisson process with
    intensity e^(-x)/x dx divided by their sum S, and that normalized vector
    is independent of S, which is a unit exponential.  The double integral
    below is the mixed moment of the (r, s)-th largest raw points, whose
    joint density factors through E(x) and E(y) - E(x); dividing by
    E(S^2) = 2 converts it to the normalized moment.
    """
    if not 1 <= r < s:
        raise ValueError(f"need 1 <= r < s, got r={r}, s={s}")

    def outer(xs):
        vals = np.empty_like(xs)
        for i, x in enumerate(xs):
            e1x = e1_real(float(x))

            def inner(ys):
                e1y = np.array([e1_real(float(t)) for t in ys])
                res = np.exp(-e1y - ys) * (e1y - e1x) ** (s - r - 1)
                return res

            edges_y = [e for e in [1e-9, 1e-6, 1e-3, 0.05, 0.25, 1.0, 2.0] if e < x] + [float(x)]
            vals[i] = _panels(inner, edges_y) * np.exp(-x) * e1x ** (r - 1)
        return vals

    edges_x = [1e-9, 1e-6, 1e-3, 0.05, 0.25, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0]
    total = _panels(outer, edges_x, nodes=48)
    return total / (2.0 * math.factorial(r - 1) * math.factorial(s - r - 1))


@dataclass
class MomentReport:
    """Per-rank means, variances and correlations with N for one regime."""

    regime: Regime
    g1: dict = field(default_factory=dict)  # r -> G(r,1)
    g2: dict = field(default_factory=dict)  # r -> G(r,2)
    mean: dict = field(default_factory=dict)  # coefficient of sqrt(n)
    variance: dict = field(default_factory=dict)  # coefficient of n
    corr_with_n: dict = field(default_factory=dict)
    cross_rank_corr: dict = field(default_factory=dict)  # (r, s) -> value
    mode: float | None = None
    median: float | None = None

    def validate(self):
        means = [self.mean[r] for r in _RANKS]
        assert all(m > 0 for m in means) and all(
            a > b for a, b in zip(means, means[1:])
        ), "means must be positive and decreasing in rank"
        assert all(self.variance[r] > 0 for r in _RANKS)
        assert all(0.0 < self.corr_with_n[r] < 1.0 for r in _RANKS)


def moment_table(
    regime: Regime,
    tol: float = 1e-12,
    include_cross_rank: bool = False,
    include_location: bool = True,
) -> MomentReport:
    """Means, variances and correlations of the four longest cycles.

    rayleigh: E(N) = sqrt(pi/2), E(N^2) = 2; halfnormal: E(N) = sqrt(2/pi),
    E(N^2) = 1.  Cross-rank correlations (no tabulated reference values) are
    included on request.  ``include_location`` adds the rank-1 mode and
    median, which cost root solves over the mixture CDF.
    """
    if regime.tag not in ("rayleigh", "halfnormal"):
        raise ValueError(f"moment tables cover rayleigh and halfnormal, got {regime.tag!r}")
    en2 = 2.0 if regime.tag == "rayleigh" else 1.0
    en = math.sqrt(math.pi / 2.0) if regime.tag == "rayleigh" else math.sqrt(2.0 / math.pi)
    var_n = en2 - en * en
    report = MomentReport(regime=regime)
    for r in _RANKS:
        g1 = g_constant(r, 1, tol)
        g2 = g_constant(r, 2, tol)
        report.g1[r] = g1
        report.g2[r] = g2
        report.mean[r] = en * g1
        if regime.tag == "rayleigh":
            report.variance[r] = 2.0 * g2 - (math.pi / 2.0) * g1 * g1
        else:
            report.variance[r] = g2 - (2.0 / math.pi) * g1 * g1
        report.corr_with_n[r] = math.sqrt(var_n) * g1 / math.sqrt(report.variance[r])
    if include_cross_rank:
        for r in _RANKS:
            for s in _RANKS:
                if r < s:
                    evv = cross_rank_moment(r, s)
                    cov = en2 * evv - report.mean[r] * report.mean[s]
                    report.cross_rank_corr[(r, s)] = cov / math.sqrt(
                        report.variance[r] * report.variance[s]
                    )
    if include_location:
        if regime.tag == "rayleigh":
            report.mode = mode_lambda1(regime)
        else:
            report.mode = 0.0
        report.median = median_lambda(1, regime)
    report.validate()
    return report


def _mode_balance(lam: float) -> float:
    """Stationarity condition for the rank-1 marginal density, rayleigh regime.

    exp(-lam^2/2) = (1/lam^2) int_lam^inf [ -rho((nu-lam)/lam)
        + nu/(nu-lam) rho((nu-2 lam)/lam) ] nu exp(-nu^2/2) dnu.
    The second term vanishes for nu < 2 lam, cancelling the nu/(nu-lam) pole.
    """
    sol = distributions._rank_solution(1)
    cut = 8.75

    def term1(nu):
        return -distributions._rank_values(sol, nu / lam - 1.0) * nu * np.exp(-nu * nu / 2.0)

    def term2(nu):
        return (
            nu
            / (nu - lam)
            * distributions._rank_values(sol, nu / lam - 2.0)
            * nu
            * np.exp(-nu * nu / 2.0)
        )

    kinks = [k * lam for k in range(1, int(cut / lam) + 2)]
    edges1 = sorted({lam, cut} | {k for k in kinks if lam < k < cut})
    integral = _panels(term1, edges1)
    if 2.0 * lam < cut:
        edges2 = sorted({2.0 * lam, cut} | {k for k in kinks if 2.0 * lam < k < cut})
        integral += _panels(term2, edges2)
    return math.exp(-lam * lam / 2.0) - integral / (lam * lam)


def mode_lambda1(regime: Regime = Regime.rayleigh()) -> float:
    """Mode of the rank-1 cycle law (rayleigh regime only)."""
    if regime.tag != "rayleigh":
        raise ValueError("the mode solver applies to the rayleigh regime")
    return brentq(_mode_balance, 0.1, 1.5, xtol=1e-8)


def median_lambda(r: int = 1, regime: Regime | str = Regime.rayleigh()) -> float:
    """Median of the rank-r cycle law: root of CDF = 1/2.

    Accepts the string "connected" for the one-component law, whose CDF is
    the half-normal error function.
    """
    if isinstance(regime, str):
        if regime != "connected":
            raise ValueError(f"unknown regime string {regime!r}")
        cdf = distributions.connected_cycle_cdf
    else:
        cdf = lambda b: distributions.mapping_longest_cycle_cdf(b, r, regime)
    lo, hi = 1e-3, 8.0
    if cdf(lo) > 0.5 or cdf(hi) < 0.5:
        raise ValueError("median bracket [1e-3, 8] failed")
    return brentq(lambda b: cdf(b) - 0.5, lo, hi, xtol=1e-8)
