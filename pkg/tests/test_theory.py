import cmath

import numpy as np
import pytest
from scipy import stats

from stieltjes_lab import theory as T
from stieltjes_lab.cfrac import CutPoint, forward_iterates, log_growth, pade_error_rate
from stieltjes_lab.coeffs import GammaParams, make_stream
from stieltjes_lab.errors import DomainError, ParameterError
from stieltjes_lab.quadrature import QuadratureSpec, integrate
from stieltjes_lab.specfun import bessel_k_complex

GOLDEN = np.log((1 + np.sqrt(5)) / 2)


# --- Lambda in the interior ------------------------------------------------------

def test_lambda_real_for_positive_t():
    lam = T.lyapunov_gamma(GammaParams(2, 1), 1.0)
    assert abs(lam.value.imag) <= 1e-9 and lam.path == "interior-K"


def test_lambda_against_monte_carlo():
    p = GammaParams(1, 1)
    est = log_growth(make_stream(p, 100), 1.0, 10 ** 6)
    lam = T.lyapunov_gamma(p, 1.0).value
    assert abs(est.value.real - lam.real) <= 3 * est.stderr.real


def test_lambda_boundary_points_are_refused():
    with pytest.raises(DomainError):
        T.lyapunov_gamma(GammaParams(1, 1), CutPoint.boundary(2.0))


def test_lambda_positive_real_part_on_interior_grid():
    p = GammaParams(3.0, 0.5)
    rs = np.geomspace(1e-3, 1e3, 40)
    phis = np.linspace(-0.99 * np.pi, 0.99 * np.pi, 25)
    for r in rs:
        for phi in phis:
            assert T.lyapunov_gamma(p, r * cmath.exp(1j * phi)).value.real > 0


def test_lambda_conjugate_symmetry():
    p = GammaParams(2.5, 0.4)
    a = T.lyapunov_gamma(p, 0.3 + 1.2j).value
    b = T.lyapunov_gamma(p, 0.3 - 1.2j).value
    assert abs(a - b.conjugate()) < 1e-13


# --- on the cut ----------------------------------------------------------------

@pytest.mark.parametrize("a", [1.0, 8.0])
def test_boundary_real_part_positive(a):
    lam = np.geomspace(1e-2, 1e2, 1000)
    v = T.boundary_lyapunov(GammaParams.unit_mean(a), lam)
    assert np.all(v.real > 0)
    assert np.all((v.imag >= -np.pi / 2) & (v.imag <= 0))


@pytest.mark.parametrize("lam", [0.05, 0.7, 2.0, 9.0])
def test_boundary_is_limit_of_interior(lam):
    p = GammaParams(2.0, 0.5)
    edge = T.boundary_lyapunov(p, lam)
    near = T.lyapunov_gamma(p, -1 / lam + 1e-6j).value
    assert abs(edge - near) < 1e-4
    below = T.lyapunov_gamma(p, -1 / lam - 1e-6j).value
    assert abs(T.boundary_lyapunov(p, lam, side=-1) - below) < 1e-4


def test_boundary_domain():
    with pytest.raises(DomainError):
        T.boundary_lyapunov(GammaParams(1, 1), 0.0)
    with pytest.raises(DomainError):
        T.dos_density(GammaParams(1, 1), -1.0)


# --- N and rho --------------------------------------------------------------------

def test_idos_limits_and_monotone():
    p = GammaParams.unit_mean(8)
    grid = np.geomspace(1e-3, 1e3, 400)
    N = T.integrated_dos(p, grid)
    assert np.all(np.diff(N) >= 0)
    # Sturm counts of a 2e5 x 2e5 matrix give N(1e-3) = 0.01007 (N ~ sqrt(lam)/pi near 0)
    assert abs(N[0] - 0.01007) < 5e-4
    assert N[-1] > 0.99


@pytest.mark.parametrize("a", [0.5, 8.0, 64.0])
def test_idos_routes_agree(a):
    grid = np.geomspace(0.01, 100, 300)
    r1, r2 = T.integrated_dos_routes(GammaParams.unit_mean(a), grid)
    assert np.max(np.abs(r1 - r2)) <= 1e-6


def test_idos_large_shape_tends_to_baseline():
    grid = np.linspace(0.2, 3.6, 30)
    err = [np.max(np.abs(T.integrated_dos(GammaParams.unit_mean(a), grid) - T.idos_inf(grid)))
           for a in (16, 64, 256)]
    assert err[0] > err[1] > err[2] and err[2] < 2e-3


def test_idos_baseline_values():
    assert abs(T.idos_inf(2.0) - 0.5) < 1e-15
    assert T.idos_inf(5.0) == 1.0 and T.idos_inf(4.0) == 1.0


@pytest.mark.parametrize("a", [1.0, 8.0, 64.0])
def test_density_positive(a):
    rho = T.dos_density(GammaParams.unit_mean(a), np.geomspace(1e-2, 1e2, 60))
    assert np.all(rho > 0)


def test_density_integrates_to_idos():
    p = GammaParams.unit_mean(8)
    area = integrate(lambda x: T.dos_density(p, x), (0.1, 20.0), QuadratureSpec(1e-10, 9)).value
    n0, n1 = T.integrated_dos(p, np.array([0.1, 20.0]))
    assert abs(area - (n1 - n0)) <= 1e-6


def test_density_against_derivative_of_idos():
    p = GammaParams(1.5, 1.0)
    for lam in (0.1, 0.6, 3.0):
        h = 1e-4 * lam
        fd = (T.integrated_dos(p, lam + h) - T.integrated_dos(p, lam - h)) / (2 * h)
        assert abs(T.dos_density(p, lam) - fd) < 1e-6 * max(1.0, fd)


def test_density_second_order_term():
    lam = np.array([1.0, 2.0, 3.0])
    coef = T.dos_large_a(lam)
    prev = None
    for a in (64, 256, 1024):
        scaled = a * a * (T.dos_density(GammaParams.unit_mean(a), lam) - T.dos_inf(lam))
        err = np.max(np.abs(scaled / coef - 1))
        if prev is not None:
            assert err < prev
        prev = err
    assert prev < 3e-3


# --- Pade rate ---------------------------------------------------------------------

def test_pade_rate_is_twice_real_lambda():
    p = GammaParams(2, 1)
    assert T.pade_rate(p, 1.0) == -2 * T.lyapunov_gamma(p, 1.0).value.real


def test_pade_rate_against_fitted_slope():
    p = GammaParams(2, 1)
    src = make_stream(p, 31)
    fit = pade_error_rate(src, 1.0, 1000, 10 ** 4)
    g = log_growth(src, 1.0, 10 ** 4)
    # OLS slope errors understate serial correlation; use the batch-means SE instead
    se = 2 * g.stderr.real
    assert abs(fit.slope - T.pade_rate(p, 1.0)) < 3 * np.hypot(se, fit.stderr)


def test_pade_rate_large_shape_limit():
    assert abs(T.pade_rate(GammaParams.unit_mean(1e4), 1.0) + 2 * GOLDEN) < 1e-4


# --- deterministic baseline ---------------------------------------------------------

def test_baseline_values():
    assert T.s_inf(0) == 1
    assert abs(T.s_inf(2) - 0.5) < 1e-15
    assert abs(T.lyapunov_inf(1) - GOLDEN) < 1e-15
    b = T.baseline(t=1.0, lam=4.0)
    assert b["edge"] and np.isinf(b["rho"]) and b["N"] == 1.0


def test_baseline_total_mass_from_density():
    area = integrate(T.sigma_inf_density, (0.0, 4.0), QuadratureSpec(1e-12, 10)).value
    assert abs(area - 1.0) < 1e-10
    assert abs(T.sigma_inf_cdf(4.0) - 1.0) < 1e-15


def test_baseline_stieltjes_transform_of_density():
    t = 0.7 + 0.3j
    val = integrate(lambda x: T.sigma_inf_density(x) / (1 + x * t), (0.0, 4.0), QuadratureSpec(1e-12, 10)).value
    assert abs(val - T.s_inf(t)) < 1e-10


def test_baseline_lambda_on_cut():
    # N = -(2/pi) Im Lambda(-1/lam + i0+)
    for lam in (0.5, 2.0, 3.9, 6.0):
        v = T.lyapunov_inf(CutPoint.boundary(1 / lam, 1))
        assert abs(-(2 / np.pi) * v.imag - T.idos_inf(lam)) < 1e-14


def test_baseline_density_matches_idos_derivative():
    lam, h = 1.3, 1e-6
    fd = (T.idos_inf(lam + h) - T.idos_inf(lam - h)) / (2 * h)
    assert abs(T.dos_inf(lam) - fd) < 1e-8


def test_lambda_first_order_in_shape():
    # a (Lambda_a - Lambda_inf) -> -1 / (2 (1 + 4t)) for Gamma(a, 1/a)
    for t in (1.0, 0.25 + 0.5j):
        target = T.lyapunov_large_a(t)
        errs = [abs(a * (T.lyapunov_gamma(GammaParams.unit_mean(a), t).value - T.lyapunov_inf(t)) - target)
                for a in (64, 256, 1024)]
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 2e-3


# --- stationary density of the forward iterates ---------------------------------------

def test_invariant_params():
    ip = T.InvariantDensityParams.from_gamma(GammaParams(2, 3), 4j)
    assert ip.p == 2 and abs(ip.s - 1.5) < 1e-15 and abs(ip.alpha + np.pi / 4) < 1e-15
    for bad in [(0, 1, 0.3), (1, -1, 0.3), (1, 1, np.pi / 2), (1, 1, 0.0)]:
        with pytest.raises(ParameterError):
            T.InvariantDensityParams(*bad)


def test_invariant_density_vanishes_outside_sector():
    ip = T.InvariantDensityParams(2.0, 1.0, np.pi / 6)
    assert T.invariant_density(ip, 1.0 * cmath.exp(0.6j)) == 0.0
    assert T.invariant_density(ip, 1.0 * cmath.exp(0.3j)) > 0


def test_invariant_moments():
    ip = T.InvariantDensityParams(2.0, 1.0, np.pi / 6)
    mass, neg_log, neg_arg = T.invariant_moments(ip)
    w = 2 * cmath.exp(-1j * ip.alpha) / ip.s
    h = 1e-5
    ratio = (bessel_k_complex(2 + h, w) - bessel_k_complex(2 - h, w)) / (2 * h) / bessel_k_complex(2, w)
    assert abs(mass - 1) <= 1e-6
    assert abs(neg_log - ratio.real) <= 1e-5
    assert abs(neg_arg - ratio.imag) <= 1e-5


def test_invariant_normalisation_via_radial_bessel():
    # the r-integral of f at fixed theta is 2 K_0(2 sqrt(c1 c2)) times the angular factor
    from scipy.special import k0
    ip = T.InvariantDensityParams(3.0, 0.7, -0.5)
    al, c = ip.alpha, np.sin(2 * ip.alpha) / ip.s

    def g(theta):
        theta = np.clip(theta, -abs(al) * (1 - 1e-15), abs(al) * (1 - 1e-15))
        sm, sp = np.sin(al - theta), np.sin(al + theta)
        ang = np.exp(ip.log_norm()) / sp ** 2 * (sm / sp) ** (ip.p - 1)
        return ang * 2 * k0(2 * np.sqrt(c * c / (sm * sp)))
    val = integrate(g, (-abs(al), abs(al)), QuadratureSpec(1e-12, 10)).value
    assert abs(val - 1) < 1e-9


@pytest.mark.parametrize("p,t", [(GammaParams(2, 1), 1 + 1j), (GammaParams.unit_mean(8), 0.5 - 2j)])
def test_forward_iterates_follow_invariant_law(p, t):
    ip = T.InvariantDensityParams.from_gamma(p, t)
    z = forward_iterates(p, t, 10 ** 5, seed=7)
    ks = stats.kstest(np.abs(z), T.radial_cdf(ip))
    assert ks.statistic <= 1.63 / np.sqrt(len(z))
