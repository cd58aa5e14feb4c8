"""Bessel functions of real order together with their order-derivatives.

``J_a`` and ``Y_a`` come from :mod:`scipy.special`; their derivatives with
respect to the order are Richardson-extrapolated central differences.  The
modified function ``K_a(w)`` for complex ``w`` with ``Re w > 0`` and its
order-derivative are evaluated from the integral

    K_a(w) = 1/2 * int exp(-w cosh x - a x) dx,

taken along a contour bent into the lower/upper half strip so that the
integrand decays without oscillating even when ``w`` approaches the
imaginary axis.  ``J_a^2 + Y_a^2`` has a second, independent route through
Nicholson's integral (the Watson representation with ``K_0``).
"""

from typing import NamedTuple

import numpy as np
from scipy import special

from .errors import DomainError
from .quadrature import QuadratureSpec, integrate

__all__ = [
    "bessel_jy", "bessel_jy_prime", "djy_da", "bessel_k_complex",
    "dk_da_complex", "log_k_ratio", "watson_m2", "jy_phase", "dtheta_da",
    "jy_aux", "JYAux",
]

_K_SPEC = QuadratureSpec(tol=1e-13, max_level=12)
_WATSON_SPEC = QuadratureSpec(tol=1e-12, max_level=12)
_PHASE_SPEC = QuadratureSpec(tol=1e-8, max_level=10)


def _check_positive(z):
    z = np.asarray(z, dtype=float)
    if np.any(~(z > 0)):
        raise DomainError("Bessel J/Y need a strictly positive argument")
    return z


def _order_step(a):
    return 1e-4 * max(1.0, abs(float(a)))


def _richardson(f, a, h):
    """Central difference in ``a`` with one Richardson step (error O(h^4))."""
    d1 = (f(a + h) - f(a - h)) / (2 * h)
    d2 = (f(a + h / 2) - f(a - h / 2)) / h
    return (4 * d2 - d1) / 3


def bessel_jy(a, z):
    """Return ``(J_a(z), Y_a(z))`` for real order ``a`` and ``z > 0``."""
    z = _check_positive(z)
    return special.jv(a, z), special.yv(a, z)


def bessel_jy_prime(a, z):
    """Return ``(J_a'(z), Y_a'(z))``, derivatives in the argument."""
    z = _check_positive(z)
    jp = 0.5 * (special.jv(a - 1, z) - special.jv(a + 1, z))
    yp = 0.5 * (special.yv(a - 1, z) - special.yv(a + 1, z))
    return jp, yp


def djy_da(a, z):
    """Order-derivatives ``(d/da J_a(z), d/da Y_a(z))``.

    Central differences with step ``1e-4 * max(1, |a|)`` and one Richardson
    extrapolation.
    """
    z = _check_positive(z)
    h = _order_step(a)
    dj = _richardson(lambda q: special.jv(q, z), a, h)
    dy = _richardson(lambda q: special.yv(q, z), a, h)
    return dj, dy


# --- K_a(w) through the bent-contour integral --------------------------------

def _k_integrals(a, w):
    """Return ``(I0, I1, shift)`` with ``K_a(w) = I0 e^shift`` and
    ``d/da K_a(w) = I1 e^shift``."""
    w = complex(w)
    a = float(a)
    if not w.real > 0:
        raise DomainError(f"K_a(w) integral needs Re w > 0, got w = {w}")
    phi = np.angle(w)
    r = abs(w)
    # real saddle of -|w| cosh x - a x, and the local width there
    x0 = -np.arcsinh(a / r)
    width = 1.0 / np.sqrt(r * np.cosh(x0))
    scale = min(1.0, 2.0 * width)

    def exponent(x):
        zc = x - 1j * phi * np.tanh(x)
        return zc, -w * np.cosh(zc) - a * zc

    probe = np.concatenate([x0 + scale * np.linspace(-10, 10, 401), np.linspace(-30, 30, 601)])
    with np.errstate(over="ignore", invalid="ignore"):
        re = exponent(probe)[1].real
    shift = float(np.nanmax(re))

    def kernel(x):
        zc, e = exponent(x)
        f = np.exp(e - shift) * (1 - 1j * phi / np.cosh(x) ** 2)
        return np.stack([0.5 * f, -0.5 * zc * f], axis=-1)

    res = integrate(kernel, "real", _K_SPEC, center=x0, scale=scale)
    return complex(res.value[0]), complex(res.value[1]), shift


def bessel_k_complex(a, w):
    """Modified Bessel function ``K_a(w)`` for real ``a`` and ``Re w > 0``."""
    i0, _, shift = _k_integrals(a, w)
    return i0 * np.exp(shift)


def dk_da_complex(a, w):
    """Order-derivative ``d/da K_a(w)`` from the same integral representation."""
    _, i1, shift = _k_integrals(a, w)
    return i1 * np.exp(shift)


def log_k_ratio(a, w):
    """``d/da ln K_a(w)``, free of the overflow that ``K`` alone suffers."""
    i0, i1, _ = _k_integrals(a, w)
    return i1 / i0


# --- J^2 + Y^2 and the phase of J + iY ---------------------------------------

def watson_m2(a, z):
    """``ln(J_a^2 + Y_a^2)`` and its order-derivative from Nicholson's integral.

        J_a^2(z) + Y_a^2(z) = 8/pi^2 int_0^inf K_0(2 z sinh t) cosh(2 a t) dt

    Returns ``(log_m2, dlog_m2_da)``; both stay finite when ``M^2`` itself
    would overflow.
    """
    z = float(_check_positive(z))
    a = float(a)
    two_a = 2.0 * abs(a)
    sign = np.sign(a)

    def log_terms(t):
        x = 2.0 * z * np.sinh(t)
        with np.errstate(divide="ignore", over="ignore"):
            lk0 = np.log(special.k0e(x)) - x
        lcosh = two_a * t + np.log1p(np.exp(-2 * two_a * t)) - np.log(2.0)
        return lk0 + lcosh

    t_peak = np.arccosh(max(1.0, abs(a) / z)) if a else 0.0
    probe = np.concatenate([np.geomspace(1e-6, 1.0, 50), t_peak + np.linspace(-5, 5, 201)])
    probe = probe[probe > 0]
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        shift = float(np.nanmax(log_terms(probe)))

    def kernel(t):
        g = np.exp(log_terms(t) - shift)
        return np.stack([g, g * 2.0 * t * sign * np.tanh(two_a * t)], axis=-1)

    res = integrate(kernel, "half", _WATSON_SPEC, center=0.0, scale=max(1.0, t_peak))
    i0, i1 = float(res.value[0]), float(res.value[1])
    return np.log(8.0 / np.pi ** 2) + np.log(i0) + shift, i1 / i0


def _asymptotic_phase(a, z):
    mu = 4.0 * a * a
    return (z - (0.5 * a + 0.25) * np.pi + (mu - 1) / (8 * z)
            + (mu - 1) * (mu - 25) / (384 * z ** 3)
            + (mu - 1) * (mu * mu - 114 * mu + 1073) / (5120 * z ** 5))


def jy_phase(a, z):
    """Continuous angle ``theta`` of ``J_a(z) + i Y_a(z)`` as a function of z.

    The branch is fixed at a large reference argument by the Hankel phase
    expansion, then carried down to ``z`` with ``d theta/dz = 2/(pi z M^2)``.
    """
    z = float(_check_positive(z))
    zref = max(z, 25.0 + 0.5 * a * a)
    j, y = bessel_jy(a, zref)
    base = np.arctan2(y, j)
    theta_ref = base + 2 * np.pi * np.round((_asymptotic_phase(a, zref) - base) / (2 * np.pi))
    if zref == z:
        return float(theta_ref)

    def rate(x):
        jj, yy = special.jv(a, x), special.yv(a, x)
        return 2.0 / (np.pi * x * (jj * jj + yy * yy))

    drop = integrate(rate, (z, zref), _PHASE_SPEC).value
    j, y = bessel_jy(a, z)
    base = np.arctan2(y, j)
    estimate = theta_ref - drop
    return float(base + 2 * np.pi * np.round((estimate - base) / (2 * np.pi)))


def dtheta_da(a, z):
    """Order-derivative of the phase of ``J_a(z) + i Y_a(z)``.

    The difference of angles is taken as the angle of a ratio, so no
    unwrapping is involved.
    """
    z = _check_positive(z)
    h = _order_step(a)

    def diff(step):
        hp = special.jv(a + step, z) + 1j * special.yv(a + step, z)
        hm = special.jv(a - step, z) + 1j * special.yv(a - step, z)
        return np.angle(hp / hm) / (2 * step)

    return (4 * diff(h / 2) - diff(h)) / 3


class JYAux(NamedTuple):
    m2: float           # J^2 + Y^2 from the Watson integral
    m2_direct: float    # J^2 + Y^2 from scipy J and Y
    dm2_da: float       # order-derivative of J^2 + Y^2 (Watson integrand)
    theta: float        # continuous angle of J + iY
    dtheta_da: float    # order-derivative of theta


def jy_aux(a, z):
    """Modulus and phase data of ``J_a(z) + i Y_a(z)`` with order-derivatives."""
    z = float(_check_positive(z))
    log_m2, dlog = watson_m2(a, z)
    j, y = bessel_jy(a, z)
    m2 = float(np.exp(log_m2))
    return JYAux(m2, float(j * j + y * y), m2 * dlog, jy_phase(a, z), float(dtheta_da(a, z)))
