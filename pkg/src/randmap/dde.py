"""Delay differential equations solved by the method of steps.

Two families are covered, both with unit delay:

* the theta family  x g'(x) + (1-theta) g(x) + theta g(x-1) = 0  for x > 1,
  with g(x) = x^(theta-1) on (0,1].  theta = 1 is Dickman's rho, theta = 1/2
  is Watterson's sigma.
* the generalized Dickman recursion  x rho_r'(x) + rho_r(x-1) = rho_{r-1}(x-1)
  for x > 1, rho_r = 1 on [0,1], with rho_0 taken identically zero on (0, inf)
  so that rank 1 reduces to the classical equation.

Solutions are represented piecewise: an exact closed-form head on (0,1], an
exact series segment on (1,2], and one Chebyshev interpolant per unit interval
beyond.  Each numeric piece is fitted in the stretched variable
s = (x-k)^(1/4): the solutions carry algebraic branch points of exponent
theta+k-1 at the integer abscissa k, which the stretch turns into terms a
polynomial basis resolves to full tolerance (for half-integer theta the
stretched piece is analytic).  Pieces are produced by spectral collocation of
the equivalent Volterra form, so continuity at breakpoints is exact by
construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import chebyshev as _cheb

from .specfun import SpecfunDomainError, arctanh, dilog

_STRETCH = 4  # x = k + s**_STRETCH on each numeric piece
_DEGREE = 48
_DEGREE_RETRY = 96
_UNDERFLOW = 1e-300


class DdeError(ValueError):
    """Invalid solver specification."""


class ToleranceNotAchievedError(RuntimeError):
    """A piece's Chebyshev tail did not fall below the requested tolerance."""


class EvaluationRangeError(ValueError):
    """Evaluation point beyond the solved domain."""


@dataclass(frozen=True)
class DdeSpec:
    """What to solve: family, parameter, domain and tolerance."""

    kind: str  # "theta-family" | "generalized-dickman"
    theta: float | None = None
    rank: int | None = None
    x_max: float = 64.0
    tol: float = 1e-12

    def __post_init__(self):
        if self.kind not in ("theta-family", "generalized-dickman"):
            raise DdeError(f"unknown kind {self.kind!r}")
        if self.kind == "theta-family":
            if self.theta is None or not self.theta > 0.0:
                raise DdeError(f"theta-family requires theta > 0, got {self.theta}")
        else:
            if self.rank is None or self.rank < 1:
                raise DdeError(f"generalized-dickman requires rank >= 1, got {self.rank}")
        if not self.x_max >= 1.0:
            raise DdeError(f"x_max must be >= 1, got {self.x_max}")
        if not 0.0 < self.tol <= 1e-6:
            raise DdeError(f"tol must lie in (0, 1e-6], got {self.tol}")


@lru_cache(maxsize=8)
def _collocation(n: int):
    """Chebyshev-Lobatto nodes on [0,1] plus value-space integration matrix.

    Q maps integrand values at the nodes to values of int_0^s integrand ds.
    """
    i = np.arange(n + 1)
    zeta = -np.cos(np.pi * i / n)
    s = 0.5 * (zeta + 1.0)
    vand = _cheb.chebvander(zeta, n)
    interp = np.linalg.inv(vand)
    antider = np.zeros((n + 2, n + 1))
    for j in range(n + 1):
        unit = np.zeros(n + 1)
        unit[j] = 1.0
        antider[:, j] = _cheb.chebint(unit)
    vand_hi = _cheb.chebvander(zeta, n + 1)
    vand_lo = _cheb.chebvander(np.array([-1.0]), n + 1)
    q = 0.5 * ((vand_hi - vand_lo) @ antider @ interp)
    return zeta, s, interp, q


def _lerch_tail(theta: float, u):
    """S(u) = sum_{j>=0} u^j/(theta+j), convergent for |u| < 1."""
    u = np.asarray(u, dtype=float)
    total = np.zeros_like(u)
    power = np.ones_like(u)
    for j in range(0, 100000):
        term = power / (theta + j)
        total += term
        if np.all(np.abs(term) <= 1e-18 * (np.abs(total) + 1e-300)):
            break
        power = power * u
    return total


def theta_delay_integral(theta: float, u):
    """T(u) = int_0^u t^(theta-1)/(1-t) dt = u^theta * S(u), for 0 <= u < 1."""
    u = np.asarray(u, dtype=float)
    return np.power(u, theta, where=u > 0, out=np.zeros_like(u)) * _lerch_tail(theta, u)


def _theta_segment(theta: float, x):
    """Exact solution of the theta family on [1,2].

    Integrating-factor form: x^(1-theta) g(x) = 1 - theta * T((x-1)/x).
    """
    x = np.asarray(x, dtype=float)
    u = (x - 1.0) / x
    return x ** (theta - 1.0) * (1.0 - theta * theta_delay_integral(theta, u))


@dataclass
class _Piece:
    lo: float
    coef: np.ndarray  # Chebyshev coefficients in zeta = 2*s - 1, s = (x-lo)^(1/4)


@dataclass
class PiecewiseSolution:
    """A solved DDE: exact head and series segment plus Chebyshev pieces."""

    spec: DdeSpec
    pieces: list[_Piece]
    closed_form_head: str
    _prev: "PiecewiseSolution | None" = None  # lower rank, generalized family only

    @property
    def x_max(self) -> float:
        return self.spec.x_max

    @property
    def theta(self) -> float:
        if self.spec.kind == "theta-family":
            return self.spec.theta
        return 1.0

    def _segment(self, x):
        if self.spec.kind == "theta-family":
            return _theta_segment(self.spec.theta, x)
        if self.spec.rank == 1:
            return _theta_segment(1.0, x)
        return np.ones_like(np.asarray(x, dtype=float))

    def _head(self, x):
        x = np.asarray(x, dtype=float)
        if self.spec.kind == "generalized-dickman":
            return np.ones_like(x)
        theta = self.spec.theta
        if theta == 1.0:
            return np.ones_like(x)
        with np.errstate(divide="ignore"):
            return x ** (theta - 1.0)

    def __call__(self, x):
        scalar = np.isscalar(x)
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        if np.any(xs > self.spec.x_max * (1.0 + 1e-12)):
            raise EvaluationRangeError(
                f"x={xs.max()} beyond solved domain x_max={self.spec.x_max}"
            )
        out = np.zeros_like(xs)
        head = (xs >= 0.0) & (xs <= 1.0)
        if np.any(head):
            out[head] = self._head(xs[head])
        seg = (xs > 1.0) & (xs <= 2.0)
        if np.any(seg):
            out[seg] = self._segment(xs[seg])
        body = xs > 2.0
        if np.any(body) and self.pieces:
            xb = xs[body]
            idx = np.clip(np.floor(xb - 2.0).astype(int), 0, len(self.pieces) - 1)
            vb = np.empty_like(xb)
            for k in np.unique(idx):
                piece = self.pieces[k]
                sel = idx == k
                s = np.power(xb[sel] - piece.lo, 1.0 / _STRETCH)
                vb[sel] = _cheb.chebval(2.0 * s - 1.0, piece.coef)
            out[body] = vb
        np.copyto(out, 0.0, where=np.abs(out) < _UNDERFLOW)
        return float(out[0]) if scalar else out

    def derivative(self, x: float) -> float:
        """d/dx of the stored interpolant (pieces region only, x > 2)."""
        if not 2.0 < x <= self.spec.x_max:
            raise EvaluationRangeError("interpolant derivative defined on (2, x_max]")
        idx = min(int(math.floor(x - 2.0)), len(self.pieces) - 1)
        piece = self.pieces[idx]
        s = (x - piece.lo) ** (1.0 / _STRETCH)
        dcoef = _cheb.chebder(piece.coef)
        dg_dzeta = _cheb.chebval(2.0 * s - 1.0, dcoef)
        return float(dg_dzeta * 2.0 / (_STRETCH * s ** (_STRETCH - 1)))

    def dde_residual(self, x: float) -> float:
        """Residual of the delay equation using the interpolant's derivative."""
        g = self(x)
        gd = self(x - 1.0)
        gp = self.derivative(x)
        if self.spec.kind == "theta-family":
            th = self.spec.theta
            return x * gp + (1.0 - th) * g + th * gd
        prev = self._prev(x - 1.0) if self._prev is not None else 0.0
        return x * gp + gd - prev

    def residual_grid(self) -> np.ndarray:
        """Interior sample points away from breakpoints, one set per piece."""
        pts = []
        for piece in self.pieces:
            s = np.linspace(0.3, 0.98, 9)
            pts.append(piece.lo + s**_STRETCH)
        return np.concatenate(pts) if pts else np.empty(0)


def eval(sol: PiecewiseSolution, x):  # noqa: A001 - spec operation name
    """Evaluate a solution; 0 below the support, error beyond x_max."""
    return sol(x)


def sigma_tilde(sol: PiecewiseSolution, x):
    """sqrt(x) times the solution value."""
    return np.sqrt(x) * sol(x)


def _fit_piece(k, g_at_k, rhs_builder, tol):
    """Collocate one unit piece on [k, k+1]; returns Chebyshev coefficients."""
    for degree in (_DEGREE, _DEGREE_RETRY):
        zeta, s, interp, q = _collocation(degree)
        values = rhs_builder(k, g_at_k, s, q)
        coef = interp @ values
        scale = max(np.max(np.abs(coef)), _UNDERFLOW)
        tail = np.max(np.abs(coef[-2:]))
        if tail <= max(tol * scale, 1e-16 * scale):
            return coef
    raise ToleranceNotAchievedError(
        f"piece [{k}, {k + 1}] Chebyshev tail {tail:.2e} exceeds tol {tol:.2e}"
    )


def solve_theta_dde(spec: DdeSpec) -> PiecewiseSolution:
    """Solve the theta-family equation on (0, x_max]."""
    if spec.kind != "theta-family":
        raise DdeError("solve_theta_dde requires a theta-family spec")
    theta = spec.theta
    sol = PiecewiseSolution(
        spec=spec,
        pieces=[],
        closed_form_head=f"x**(theta-1) with theta={theta} on (0,1]",
    )
    n_pieces = max(0, math.ceil(spec.x_max) - 2)

    def rhs_builder(k, g_at_k, s, q):
        x_delay = (k - 1.0) + s**_STRETCH
        if k == 2:
            delayed = _theta_segment(theta, x_delay)
        else:
            prev = sol.pieces[k - 3]
            delayed = _cheb.chebval(2.0 * s - 1.0, prev.coef)
        w = _STRETCH * s ** (_STRETCH - 1) / (k + s**_STRETCH)
        a = (1.0 - theta) * w
        b = theta * w * delayed
        m = np.eye(len(s)) + q @ np.diag(a)
        return np.linalg.solve(m, g_at_k - q @ b)

    g_end = float(_theta_segment(theta, 2.0)) if spec.x_max > 2.0 else None
    for j in range(n_pieces):
        k = 2 + j
        coef = _fit_piece(k, g_end, rhs_builder, spec.tol)
        sol.pieces.append(_Piece(lo=float(k), coef=coef))
        g_end = float(_cheb.chebval(1.0, coef))
    return sol


def solve_generalized_dickman(spec: DdeSpec) -> PiecewiseSolution:
    """Solve the rank-r recursion; lower ranks are solved (and cached) first."""
    if spec.kind != "generalized-dickman":
        raise DdeError("solve_generalized_dickman requires a generalized-dickman spec")
    rank = spec.rank
    prev = None
    if rank > 1:
        prev = dickman_solution(rank - 1, x_max=spec.x_max, tol=spec.tol)
    sol = PiecewiseSolution(
        spec=spec,
        pieces=[],
        closed_form_head="1 on [0,1]",
        _prev=prev,
    )
    n_pieces = max(0, math.ceil(spec.x_max) - 2)

    def rhs_builder(k, g_at_k, s, q):
        x_delay = (k - 1.0) + s**_STRETCH
        if k == 2:
            own = sol._segment(x_delay)
        else:
            own = _cheb.chebval(2.0 * s - 1.0, sol.pieces[k - 3].coef)
        lower = prev(x_delay) if prev is not None else np.zeros_like(x_delay)
        w = _STRETCH * s ** (_STRETCH - 1) / (k + s**_STRETCH)
        return g_at_k + q @ (w * (lower - own))

    if spec.x_max > 2.0:
        g_end = 1.0 if rank >= 2 else float(_theta_segment(1.0, 2.0))
    for j in range(n_pieces):
        k = 2 + j
        coef = _fit_piece(k, g_end, rhs_builder, spec.tol)
        sol.pieces.append(_Piece(lo=float(k), coef=coef))
        g_end = float(_cheb.chebval(1.0, coef))
    return sol


def rho_closed_form(x: float) -> float:
    """Dickman rho on [0, 3] from the elementary piecewise formulas."""
    if not 0.0 <= x <= 3.0:
        raise SpecfunDomainError(f"rho_closed_form covers [0, 3], got {x}")
    if x <= 1.0:
        return 1.0
    if x <= 2.0:
        return 1.0 - math.log(x)
    return (
        1.0
        - math.pi**2 / 12.0
        - math.log(x)
        + 0.5 * math.log(x) ** 2
        + dilog(1.0 / x)
    )


def sigma_closed_form(x: float) -> float:
    """Watterson sigma on (0, 2] from the elementary piecewise formulas."""
    if not 0.0 < x <= 2.0:
        raise SpecfunDomainError(f"sigma_closed_form covers (0, 2], got {x}")
    if x <= 1.0:
        return 1.0 / math.sqrt(x)
    return (1.0 - arctanh(math.sqrt(1.0 - 1.0 / x))) / math.sqrt(x)


@lru_cache(maxsize=64)
def _theta_cached(theta: float, x_max: float, tol: float) -> PiecewiseSolution:
    return solve_theta_dde(DdeSpec(kind="theta-family", theta=theta, x_max=x_max, tol=tol))


@lru_cache(maxsize=64)
def _dickman_cached(rank: int, x_max: float, tol: float) -> PiecewiseSolution:
    return solve_generalized_dickman(
        DdeSpec(kind="generalized-dickman", rank=rank, x_max=x_max, tol=tol)
    )


def theta_solution(theta: float, x_max: float = 64.0, tol: float = 1e-12) -> PiecewiseSolution:
    """Cached solution of the theta family."""
    return _theta_cached(float(theta), float(x_max), float(tol))


def dickman_solution(rank: int = 1, x_max: float = 64.0, tol: float = 1e-12) -> PiecewiseSolution:
    """Cached solution of the rank-r recursion (rank 1 is classical rho)."""
    return _dickman_cached(int(rank), float(x_max), float(tol))


def watterson_solution(x_max: float = 64.0, tol: float = 1e-12) -> PiecewiseSolution:
    return theta_solution(0.5, x_max=x_max, tol=tol)
