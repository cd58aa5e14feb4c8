"""Closed-form predictions for gamma-distributed coefficients.

With ``s_n ~ Gamma(a, b)`` the complex growth rate of the denominators is

    Lambda(t) = d/da ln K_a(2 sqrt(t) / b),

and on the cut, with ``z = 2 / (b sqrt(lam))``, it splits into Bessel J/Y
terms:

    Re Lambda(-1/lam + i0+) = (J dJ + Y dY) / (J^2 + Y^2)
    Im Lambda(-1/lam + i0+) = -pi/2 + (Y dJ - J dY) / (J^2 + Y^2)

(``d`` is the order-derivative).  The integrated density of states is
``N = -(2/pi) Im Lambda`` there, and its derivative is

    rho(lam) = -2/(pi^2 lam) d/da [1 / (J_a(z)^2 + Y_a(z)^2)].

The deterministic baseline ``s_n = 1`` and the stationary density of the
forward iterates are also provided.
"""

import cmath
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import interpolate

from .cfrac import CutPoint, as_cut
from .coeffs import GammaParams
from .errors import ConsistencyError, DomainError, ParameterError
from .quadrature import QuadratureSpec, integrate
from .specfun import bessel_jy, bessel_k_complex, djy_da, dtheta_da, log_k_ratio, watson_m2

__all__ = [
    "LyapunovValue", "lyapunov_gamma", "boundary_lyapunov", "integrated_dos",
    "integrated_dos_routes", "dos_density", "pade_rate", "s_inf",
    "lyapunov_inf", "idos_inf", "dos_inf", "sigma_inf_density", "sigma_inf_cdf",
    "lyapunov_large_a", "dos_large_a", "baseline", "InvariantDensityParams",
    "invariant_density", "invariant_moments", "radial_cdf",
]


class LyapunovValue(NamedTuple):
    value: complex
    path: str           # "interior-K" or "boundary-JY"


def _lam_to_z(params, lam):
    lam = np.asarray(lam, dtype=float)
    if np.any(~(lam > 0)):
        raise DomainError("lambda must be positive")
    return 2.0 / (params.b * np.sqrt(lam))


def lyapunov_gamma(params: GammaParams, t) -> LyapunovValue:
    """``Lambda(t) = d/da ln K_a(2 sqrt(t)/b)`` at an interior point."""
    cut = as_cut(t)
    if cut.is_boundary:
        raise DomainError("t is on the cut; use boundary_lyapunov")
    w = 2.0 * cut.sqrt / params.b
    if not w.real > 0:
        raise DomainError(f"need Re sqrt(t) > 0, got t = {cut.t}")
    return LyapunovValue(complex(log_k_ratio(params.a, w)), "interior-K")


def _boundary_parts(params, lam):
    z = _lam_to_z(params, lam)
    j, y = bessel_jy(params.a, z)
    dj, dy = djy_da(params.a, z)
    # divide through by the larger of |J|, |Y| so the squares cannot overflow
    m = np.maximum(np.abs(j), np.abs(y))
    j, y, dj, dy = j / m, y / m, dj / m, dy / m
    m2 = j * j + y * y
    return (j * dj + y * dy) / m2, (y * dj - j * dy) / m2


def boundary_lyapunov(params: GammaParams, lam, side=1):
    """``Lambda(-1/lam + i0+)`` (or ``i0-`` for ``side=-1``) from J and Y.

    Vectorised over ``lam``; returns complex values.
    """
    re, im_part = _boundary_parts(params, lam)
    value = re + 1j * (-0.5 * np.pi + im_part)
    if side == -1:
        value = np.conj(value)
    elif side != 1:
        raise ParameterError("side must be +1 or -1")
    return value


def integrated_dos_routes(params: GammaParams, lam):
    """Both evaluations of ``N(lam)``: from ``Im Lambda`` on the cut and
    from the order-derivative of the phase of ``J + iY``."""
    via_lambda = -(2.0 / np.pi) * boundary_lyapunov(params, lam).imag
    z = _lam_to_z(params, lam)
    via_phase = 1.0 + (2.0 / np.pi) * dtheta_da(params.a, z)
    return via_lambda, via_phase


def integrated_dos(params: GammaParams, lam, max_disagreement=1e-4):
    """Integrated density of states ``N(lam)`` (vectorised).

    Raises
    ------
    ConsistencyError
        If the two routes differ by more than ``max_disagreement``.
    """
    a, b = integrated_dos_routes(params, lam)
    gap = np.max(np.abs(a - b))
    if gap > max_disagreement:
        raise ConsistencyError(f"N(lambda) routes disagree by {gap:.3g}")
    return a


def dos_density(params: GammaParams, lam):
    """Density of states ``rho(lam) = 2/(pi^2 lam) (dM^2/da) / M^4`` with
    ``M^2 = J_a^2 + Y_a^2`` taken from its integral representation."""
    z = _lam_to_z(params, lam)
    lam = np.asarray(lam, dtype=float)

    def one(zz, ll):
        log_m2, dlog = watson_m2(params.a, zz)
        return 2.0 / (np.pi ** 2 * ll) * dlog * np.exp(-log_m2)

    if z.ndim == 0:
        return float(one(float(z), float(lam)))
    return np.array([one(zz, ll) for zz, ll in zip(z.ravel(), lam.ravel())]).reshape(z.shape)


def pade_rate(params: GammaParams, t) -> float:
    """Almost-sure limit of ``ln|S - S_n| / n``, i.e. ``-2 Re Lambda(t)``."""
    return -2.0 * lyapunov_gamma(params, t).value.real


# --- deterministic baseline s_n = 1 ------------------------------------------

def s_inf(t):
    """``S(t)`` for ``s_n = 1``: ``2 / (1 + sqrt(1 + 4t))``."""
    return 2.0 / (1.0 + cmath.sqrt(1.0 + 4.0 * complex(t)))


def lyapunov_inf(t):
    """Growth rate for ``s_n = 1``: ``ln((sqrt(1/t + 4) + 1/sqrt(t)) / 2)``."""
    cut = as_cut(t)
    r = cut.sqrt
    if cut.is_boundary:
        x = -cut.t.real
        # 1/t + 4 approaches the real axis from the side opposite to t
        inner = cmath.sqrt(complex(4.0 - 1.0 / x, -cut.side * 0.0))
    else:
        inner = cmath.sqrt(1.0 / cut.t + 4.0)
    return cmath.log((inner + 1.0 / r) / 2.0)


def idos_inf(lam):
    lam = np.asarray(lam, dtype=float)
    inside = np.clip(np.sqrt(np.clip(lam, 0, None)) / 2.0, 0.0, 1.0)
    return np.where(lam < 4.0, 1.0 - (2.0 / np.pi) * np.arccos(inside), 1.0)


def dos_inf(lam):
    """``1/(pi sqrt(lam (4 - lam)))`` on (0, 4), zero above, infinite at 4."""
    lam = np.asarray(lam, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        rho = np.where(lam < 4.0, 1.0 / (np.pi * np.sqrt(lam * (4.0 - lam))), 0.0)
    return np.where(lam == 4.0, np.inf, rho)


def sigma_inf_density(x):
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where((x > 0) & (x < 4), np.sqrt(np.clip(4.0 / x - 1.0, 0, None)) / (2 * np.pi), 0.0)


def sigma_inf_cdf(x):
    """``int_0^x sigma_inf``: ``(2 phi + sin 2 phi)/pi`` with ``x = 4 sin^2 phi``."""
    x = np.clip(np.asarray(x, dtype=float), 0.0, 4.0)
    phi = np.arcsin(np.sqrt(x) / 2.0)
    return (2 * phi + np.sin(2 * phi)) / np.pi


def lyapunov_large_a(t):
    """First-order coefficient ``c(t)`` in ``Lambda = Lambda_inf + c(t)/a + O(a^-2)``
    for ``Gamma(a, 1/a)``; from the uniform (Debye) expansion of ``K_a``:
    ``c(t) = -1 / (2 (1 + 4t))``."""
    return -1.0 / (2.0 * (1.0 + 4.0 * complex(t)))


def dos_large_a(lam):
    """Coefficient of ``a^-2`` in the large-``a`` expansion of ``rho``:
    ``-cos(beta) / (32 pi sin^3 beta) (13 + 38 cot^2 beta + 25 cot^4 beta)``,
    ``beta = arccos(sqrt(lam)/2)``, for ``0 < lam < 4``."""
    lam = np.asarray(lam, dtype=float)
    beta = np.arccos(np.sqrt(lam) / 2.0)
    c = 1.0 / np.tan(beta)
    return -np.cos(beta) / (32 * np.pi * np.sin(beta) ** 3) * (13 + 38 * c ** 2 + 25 * c ** 4)


def baseline(t=None, lam=None):
    """Closed-form values for ``s_n = 1`` at ``t`` and/or ``lam``."""
    out = {}
    if t is not None:
        out["S"] = s_inf(as_cut(t).t)
        out["Lambda"] = lyapunov_inf(t)
        out["Lambda_large_a"] = lyapunov_large_a(as_cut(t).t)
    if lam is not None:
        if not lam > 0:
            raise DomainError("lambda must be positive")
        out["N"] = float(idos_inf(lam))
        out["rho"] = float(dos_inf(lam))
        out["edge"] = lam == 4.0
        out["rho_large_a"] = float(dos_large_a(lam)) if lam < 4 else float("nan")
        out["sigma_cdf"] = float(sigma_inf_cdf(lam))
    return out


# --- stationary density of the forward iterates ------------------------------

@dataclass(frozen=True)
class InvariantDensityParams:
    """Shape ``p``, scale ``s`` of the rescaled coefficients ``s_n/sqrt|t|``
    and half-angle ``alpha = -arg(t)/2``."""

    p: float
    s: float
    alpha: float

    def __post_init__(self):
        if not self.p > 0 or not self.s > 0:
            raise ParameterError("p and s must be positive")
        if not abs(self.alpha) < np.pi / 2:
            raise ParameterError("need |alpha| < pi/2")
        if self.alpha == 0:
            raise ParameterError("alpha = 0 gives a degenerate (real) law")

    @classmethod
    def from_gamma(cls, params: GammaParams, t):
        t = as_cut(t).t
        return cls(params.a, params.b / np.sqrt(abs(t)), -cmath.phase(t) / 2.0)

    @property
    def t(self):
        """A cut point with these parameters when ``b = s`` (``|t| = 1``)."""
        return CutPoint(cmath.exp(-2j * self.alpha))

    def log_norm(self):
        k = bessel_k_complex(self.p, 2.0 * cmath.exp(1j * self.alpha) / self.s)
        return np.log(np.sin(2 * abs(self.alpha))) - 2.0 * np.log(abs(2.0 * k))


def _log_density_polar(ip: InvariantDensityParams, r, theta, log_norm):
    al = ip.alpha
    sm, sp_ = np.sin(al - theta), np.sin(al + theta)
    c = np.sin(2 * al) / ip.s
    with np.errstate(divide="ignore", invalid="ignore"):
        return (log_norm - 2 * np.log(r) - 2 * np.log(np.abs(sp_))
                + (ip.p - 1) * np.log(sm / sp_) - c * (1.0 / (r * sm) + r / sp_))


def invariant_density(ip: InvariantDensityParams, z):
    """Density (w.r.t. area) of the stationary law on ``|arg z| < |alpha|``."""
    z = np.asarray(z, dtype=complex)
    r, theta = np.abs(z), np.angle(z)
    inside = (np.abs(theta) < abs(ip.alpha)) & (r > 0)
    out = np.zeros(z.shape)
    if inside.any():
        out[inside] = np.exp(_log_density_polar(ip, r[inside], theta[inside], ip.log_norm()))
    return out if out.ndim else float(out)


_INV_SPEC = QuadratureSpec(tol=1e-9, max_level=9)


def invariant_moments(ip: InvariantDensityParams):
    """``(mass, -E ln|Z|, -E arg Z)`` by quadrature in polar coordinates:
    exp-sinh in ``r`` inside tanh-sinh in ``theta``."""
    ln = ip.log_norm()
    al = abs(ip.alpha)

    def over_theta(theta):
        def over_r(r):
            f = np.exp(_log_density_polar(ip, r[:, None], theta[None, :], ln)) * r[:, None]
            f = np.where(np.isfinite(f), f, 0.0)
            return np.concatenate([f, f * np.log(r)[:, None]], axis=1)
        val = integrate(over_r, "half", _INV_SPEC).value
        k = len(theta)
        g, glog = val[:k], val[k:]
        return np.stack([g, -glog, -theta * g], axis=-1)

    mass, neg_log, neg_arg = integrate(over_theta, (-al, al), _INV_SPEC).value
    return float(mass), float(neg_log), float(neg_arg)


def radial_cdf(ip: InvariantDensityParams, n_grid=1500):
    """Cumulative distribution of ``|Z|`` as a callable, built from the
    radial marginal on a logarithmic grid and integrated cumulatively."""
    ln = ip.log_norm()
    al = abs(ip.alpha)

    def marginal(logr):
        r = np.exp(logr)

        def over_theta(theta):
            f = np.exp(_log_density_polar(ip, r[None, :], theta[:, None], ln)) * r[None, :] ** 2
            return np.where(np.isfinite(f), f, 0.0)
        return integrate(over_theta, (-al, al), _INV_SPEC).value

    # locate the bulk on a coarse grid, then resolve it finely
    coarse = np.linspace(-40, 40, 801)
    mc = marginal(coarse)
    keep = np.nonzero(mc > mc.max() * 1e-18)[0]
    lo, hi = coarse[max(keep[0] - 1, 0)], coarse[min(keep[-1] + 1, len(coarse) - 1)]
    grid = np.linspace(lo, hi, n_grid)
    dens = marginal(grid)                      # density of log|Z|
    spline = interpolate.CubicSpline(grid, dens)
    cum = spline.antiderivative()(grid)
    cum -= cum[0]
    total = cum[-1]
    cdf_log = interpolate.PchipInterpolator(grid, cum / total)

    def cdf(r):
        lr = np.log(np.asarray(r, dtype=float))
        return np.clip(cdf_log(np.clip(lr, lo, hi)), 0.0, 1.0)

    cdf.total = total
    return cdf
