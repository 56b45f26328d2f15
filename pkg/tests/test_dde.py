import math

import numpy as np
import pytest
from scipy.integrate import quad

from randmap import dde
from randmap.dde import (
    DdeError,
    DdeSpec,
    EvaluationRangeError,
    dickman_solution,
    rho_closed_form,
    sigma_closed_form,
    sigma_tilde,
    theta_solution,
    watterson_solution,
)


@pytest.fixture(scope="module")
def rho():
    return dickman_solution(1)


@pytest.fixture(scope="module")
def sigma():
    return watterson_solution()


class TestSpecValidation:
    def test_bad_kind(self):
        with pytest.raises(DdeError):
            DdeSpec(kind="nope")

    def test_bad_theta(self):
        with pytest.raises(DdeError):
            DdeSpec(kind="theta-family", theta=-1.0)

    def test_bad_tol(self):
        with pytest.raises(DdeError):
            DdeSpec(kind="theta-family", theta=1.0, tol=1e-3)

    def test_bad_rank(self):
        with pytest.raises(DdeError):
            DdeSpec(kind="generalized-dickman", rank=0)


class TestInitialSegments:
    def test_rho_is_one_on_unit_interval(self, rho):
        for x in [0.0, 0.25, 0.5, 1.0]:
            assert rho(x) == 1.0

    def test_theta_one_at_half(self):
        sol = theta_solution(1.0)
        assert sol(0.5) == 1.0

    def test_theta_half_at_half(self):
        sol = theta_solution(0.5)
        assert sol(0.5) == pytest.approx(1.0 / math.sqrt(0.5), rel=1e-15)

    def test_zero_below_support(self, rho, sigma):
        assert rho(-1.0) == 0.0
        assert sigma(-0.5) == 0.0

    def test_out_of_range(self, rho):
        with pytest.raises(EvaluationRangeError):
            rho(65.0)


class TestClosedForms:
    def test_rho_closed_form_values(self):
        assert rho_closed_form(2.0) == pytest.approx(1.0 - math.log(2.0), rel=1e-15)
        # 1 - pi^2/12 - ln x + ln(x)^2/2 + Li2(1/x) at x = 2.5
        assert rho_closed_form(2.5) == pytest.approx(0.13031956183225075, rel=1e-12)

    def test_sigma_closed_form_continuity_at_one(self):
        assert sigma_closed_form(1.0) == pytest.approx(1.0, rel=1e-15)
        assert sigma_closed_form(1.0 + 1e-12) == pytest.approx(1.0, abs=1e-5)

    def test_sigma_tilde_at_two(self, sigma):
        # 1 - arctanh(sqrt(1/2)) and its sqrt(2)-scaled companion
        assert sigma_tilde(sigma, 2.0) == pytest.approx(0.11862641298045697, rel=1e-10)
        assert sigma(2.0) == pytest.approx(0.08388154104631684, rel=1e-10)

    def test_domain_errors(self):
        for bad in [-0.1, 3.5]:
            with pytest.raises(Exception):
                rho_closed_form(bad)
        for bad in [0.0, 2.5]:
            with pytest.raises(Exception):
                sigma_closed_form(bad)


class TestSolverAgainstClosedForms:
    def test_rho_dense_grid(self, rho):
        xs = np.linspace(1.0, 3.0, 501)
        err = max(abs(rho(float(x)) - rho_closed_form(float(x))) for x in xs)
        assert err <= 1e-10

    def test_sigma_dense_grid(self, sigma):
        xs = np.linspace(1.0, 2.0, 301)
        err = max(abs(sigma(float(x)) - sigma_closed_form(float(x))) for x in xs)
        assert err <= 1e-10

    def test_theta_family_reproduces_rho_and_sigma(self, rho, sigma):
        g1 = theta_solution(1.0)
        for x in [0.5, 1.5, 2.5, 4.0, 7.5]:
            assert g1(x) == pytest.approx(rho(x), rel=1e-11, abs=1e-14)
        assert theta_solution(0.5) is watterson_solution()

    def test_rho_at_two(self, rho):
        assert rho(2.0) == pytest.approx(1.0 - math.log(2.0), rel=1e-12)

    def test_deep_values(self, rho):
        # classical reference values of Dickman's function
        assert rho(4.0) == pytest.approx(4.910925648e-3, rel=1e-8)
        assert rho(6.0) == pytest.approx(1.964969635e-5, rel=1e-7)


class TestGeneralizedDickman:
    def test_rank_one_is_rho(self, rho):
        r1 = dickman_solution(1)
        for x in [0.5, 1.5, 2.7, 5.0]:
            assert r1(x) == rho(x)

    def test_plateau(self):
        r2 = dickman_solution(2)
        for x in [0.3, 1.0, 1.7, 2.0]:
            assert r2(x) == pytest.approx(1.0, abs=1e-14)
        r3 = dickman_solution(3)
        assert r3(2.9) == pytest.approx(1.0, abs=1e-13)

    def test_rank_two_quadrature_oracle(self):
        # on [2,3]: rho_2(x) = 1 - int_2^x ln(t-1)/t dt
        r2 = dickman_solution(2)
        for x in [2.2, 2.5, 3.0]:
            ref = 1.0 - quad(lambda t: math.log(t - 1.0) / t, 2.0, x)[0]
            assert r2(x) == pytest.approx(ref, abs=1e-11)
        assert r2(2.5) == pytest.approx(0.9533897062935942, rel=1e-11)

    def test_rank_one_at_three(self, rho):
        assert rho(3.0) == pytest.approx(0.0486083883, abs=1e-9)

    def test_rank_monotonicity(self, rho):
        sols = [rho, dickman_solution(2), dickman_solution(3), dickman_solution(4)]
        xs = np.linspace(0.2, 30.0, 200)
        for lo, hi in zip(sols, sols[1:]):
            vals_lo = lo(xs)
            vals_hi = hi(xs)
            assert np.all(vals_hi >= vals_lo - 1e-12)
            assert np.all((vals_hi >= -1e-15) & (vals_hi <= 1.0 + 1e-12))

    def test_nonincreasing(self):
        r2 = dickman_solution(2)
        xs = np.linspace(0.5, 25.0, 400)
        vals = r2(xs)
        assert np.all(np.diff(vals) <= 1e-13)


class TestDdeResidualsAndDerivatives:
    def test_dickman_derivative_identity(self, rho):
        # rho'(x) = -rho(x-1)/x, checked through the stored interpolant
        rng = np.random.default_rng(42)
        pts = rng.uniform(2.05, 50.0, 1000)
        resid = max(
            abs(rho.derivative(float(x)) + rho(float(x) - 1.0) / float(x)) for x in pts
        )
        assert resid <= 1e-9

    def test_residual_grid(self, rho, sigma):
        for sol in (rho, sigma, theta_solution(1.5), dickman_solution(2)):
            grid = sol.residual_grid()
            worst = max(abs(sol.dde_residual(float(x))) for x in grid)
            assert worst <= 100.0 * sol.spec.tol

    def test_continuity_at_breakpoints(self, rho, sigma):
        for sol in (rho, sigma):
            for k in range(2, 40):
                below = sol(k - 1e-13)
                above = sol(k + 1e-13)
                assert abs(below - above) <= 10.0 * sol.spec.tol


class TestSigmaTildeDerivativeIdentity:
    def test_finite_difference_identity(self, sigma):
        # d/dx sigma~(1/x) = sigma((1-x)/x) / (2 x^(3/2)), 100 points in (0.1, 0.9).
        # Step chosen per point: bounded by the local logarithmic slope (the
        # tail decays superexponentially) and by the distance to breakpoint
        # preimages x = 1/j, where higher derivatives are unbounded.
        xs = np.linspace(0.102, 0.898, 100)
        worst = 0.0
        for x in xs:
            f = lambda t: sigma_tilde(sigma, 1.0 / t)
            slope = abs(f(x + 1e-3) - f(x - 1e-3)) / (2e-3 * abs(f(x)))
            d_break = min(abs(x - 1.0 / j) for j in range(2, 12))
            h = max(1e-5, min(2e-3, 0.02 / max(slope, 1.0), 0.05 * d_break))
            deriv = (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)
            rhs = sigma((1.0 - x) / x) / (2.0 * x**1.5)
            worst = max(worst, abs(deriv - rhs) / abs(rhs))
        assert worst <= 1e-6


def test_vectorized_eval_matches_scalar(rho=None):
    sol = dickman_solution(1)
    xs = np.array([-1.0, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 10.0, 63.9])
    vec = sol(xs)
    for x, v in zip(xs, vec):
        assert v == sol(float(x))
