"""Convergents of S(t) = 1/(s_1 + t/(s_2 + t/(s_3 + ...))) and their growth.

Everything is driven by the denominators ``Q_n`` of the convergents, or by
their rescaled form ``u_n = Q_n / sqrt(t)^n`` which solves

    u_{n+1} = u_{n-1} + (s_{n+1} / sqrt(t)) u_n,    u_{-1} = 0, u_0 = 1.

The numerators obey the same recurrence with ``P_0 = 0, P_1 = 1``.  Long runs
never form ``u_n`` itself: the pair is renormalised and its complex logarithm
is accumulated from per-step ratios ``u_{k+1}/u_k = 1/Zhat_{k+1}``, each of
which lies in a sector of half-angle below pi/2, so the principal branch is
exact step by step.
"""

import cmath
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .coeffs import CHUNK, CoefficientStream, GammaParams, as_coefficients, make_stream
from .errors import AccuracyError, ParameterError, PoleError

__all__ = [
    "CutPoint", "as_cut", "LogConvergentState", "convergent_eval",
    "convergent_polys", "forward_ratios", "log_growth", "GrowthEstimate",
    "log_u_profile", "successive_difference_logs", "log_error_profile",
    "pade_error_rate", "RateFit", "moments_from_coefficients",
    "reference_value", "Reference", "forward_iterates",
]


@dataclass(frozen=True)
class CutPoint:
    """A point of C minus the negative half-axis, or a boundary value on it.

    Interior points carry ``side = 0``.  A boundary value ``-x + i0+`` (or
    ``-x + i0-``) is stored as ``t = -x`` with ``side = +1`` (or ``-1``).
    """

    t: complex
    side: int = 0

    def __post_init__(self):
        t = complex(self.t)
        object.__setattr__(self, "t", t)
        if self.side == 0:
            if t.imag == 0 and t.real < 0:
                raise ParameterError(f"t = {t} lies on the cut; use CutPoint.boundary")
        elif self.side in (1, -1):
            if not (t.imag == 0 and t.real < 0):
                raise ParameterError("boundary points need t = -x with x > 0")
        else:
            raise ParameterError("side must be 0, +1 or -1")

    @classmethod
    def boundary(cls, x, side=1):
        if not x > 0:
            raise ParameterError(f"boundary point needs x > 0, got {x}")
        return cls(complex(-float(x), 0.0), side)

    @property
    def is_boundary(self):
        return self.side != 0

    @property
    def sqrt(self):
        """Branch of sqrt(t) with non-negative real part; +-i sqrt(x) on the cut."""
        if self.side:
            return self.side * 1j * np.sqrt(-self.t.real)
        return cmath.sqrt(self.t)

    @property
    def is_real_positive(self):
        return self.side == 0 and self.t.imag == 0 and self.t.real > 0


def as_cut(t) -> CutPoint:
    return t if isinstance(t, CutPoint) else CutPoint(complex(t))


def _coefficients(source, n):
    return as_coefficients(source, n)


@dataclass
class LogConvergentState:
    """Scaled snapshot of the recurrence after ``n`` steps.

    ``u_prev, u`` and ``p_prev, p`` share one scale factor with ``|u| = 1``;
    ``log_u`` is the complex logarithm of the true ``u_n`` with its argument
    tracked continuously, so ``exp(log_u) * u`` reproduces ``u_n``.
    """

    n: int
    u_prev: complex
    u: complex
    p_prev: complex
    p: complex
    log_u: complex
    sqrt_t: complex
    history: list = field(default_factory=list, repr=False)

    @property
    def convergent(self):
        return self.p / self.u

    @property
    def log_q(self):
        """Complex log of ``Q_n = sqrt(t)^n u_n``."""
        return self.log_u + self.n * cmath.log(self.sqrt_t)

    def value_u(self):
        return cmath.exp(self.log_u) * self.u


def convergent_eval(source, n, t, renorm_every=1):
    """Evaluate the convergent ``S_n(t) = P_n(t)/Q_n(t)``.

    Parameters
    ----------
    source : CoefficientStream or sequence
        Coefficients ``s_1, s_2, ...``.
    n : int
        Order, ``n >= 1``.
    t : CutPoint or complex
    renorm_every : int
        Rescale the state every this many steps (the ratio is unaffected).

    Returns
    -------
    (complex, LogConvergentState)

    Raises
    ------
    PoleError
        If ``Q_n`` vanishes at ``t``.
    """
    n = int(n)
    if n < 1:
        raise ParameterError("n must be >= 1")
    cut = as_cut(t)
    s = _coefficients(source, n)
    r = cut.sqrt
    if r == 0:
        # t = 0: every convergent equals 1/s_1
        return 1.0 / s[0], LogConvergentState(n, 0j, 1 + 0j, 0j, 1.0 / s[0], complex(np.log(s[0])), 0j)

    x = (s / r).tolist()
    u_prev, u = 1 + 0j, complex(x[0])     # u_0, u_1
    p_prev, p = 0j, 1.0 / r               # ptilde_0, ptilde_1
    if u == 0:
        raise PoleError("Q_1 vanishes", 1)
    log_u = cmath.log(u)
    # keep u_prev, u on the scale of u_n
    u_prev, p_prev, p = u_prev / u, p_prev / u, p / u
    u = 1 + 0j
    scale_since = 0
    for k in range(1, n):
        u_new = u_prev + x[k] * u
        if u_new == 0:
            raise PoleError(f"Q_{k + 1} vanishes at t = {cut.t}", k + 1)
        p_new = p_prev + x[k] * p
        log_u += cmath.log(u_new / u)
        u_prev, u, p_prev, p = u, u_new, p, p_new
        scale_since += 1
        if scale_since >= renorm_every:
            u_prev, p_prev, p = u_prev / u, p_prev / u, p / u
            u = 1 + 0j
            scale_since = 0
    # log_u already refers to the true u_n; only the pair is rescaled
    if u != 1:
        u_prev, p_prev, p, u = u_prev / u, p_prev / u, p / u, 1 + 0j
    state = LogConvergentState(n, u_prev, u, p_prev, p, log_u, r)
    return p / u, state


def convergent_polys(s, t):
    """Unscaled ``P_0..P_N`` and ``Q_0..Q_N`` at ``t`` (short sequences only)."""
    s = np.asarray(s, dtype=float)
    t = complex(t)
    P = [0j, 1 + 0j]
    Q = [1 + 0j, complex(s[0])]
    for k in range(1, len(s)):
        P.append(t * P[k - 1] + s[k] * P[k])
        Q.append(t * Q[k - 1] + s[k] * Q[k])
    return np.array(P), np.array(Q)


def forward_ratios(source, t, n, zhat0=0j):
    """Forward iterates ``Zhat_k = u_{k-1}/u_k`` for ``k = 1..n``.

    ``zhat0 = u_{-1}/u_0`` selects the starting value (0 for the convergent
    denominators).
    """
    cut = as_cut(t)
    r = cut.sqrt
    if r == 0:
        raise ParameterError("forward iterates need t != 0")
    s = _coefficients(source, n)
    x = (s / r).tolist()
    out = [0j] * n
    z = complex(zhat0)
    for k in range(n):
        d = x[k] + z
        if d == 0:
            raise PoleError(f"u_{k + 1} vanishes", k + 1)
        z = 1.0 / d
        out[k] = z
    return np.array(out)


class GrowthEstimate(NamedTuple):
    value: complex       # L_n / n
    stderr: complex      # batch-means standard errors (real part, imaginary part)
    n: int


def _batch_se(x, batches=50):
    m = len(x) // batches
    if m < 2:
        return complex(np.std(x.real) / np.sqrt(len(x)), np.std(x.imag) / np.sqrt(len(x)))
    b = x[: m * batches].reshape(batches, m).mean(axis=1)
    return complex(np.std(b.real, ddof=1), np.std(b.imag, ddof=1)) / np.sqrt(batches)


def log_growth(source, t, n, u_start=(0.0, 1.0)) -> GrowthEstimate:
    """Estimate the complex growth rate ``lim ln(u_n)/n``.

    ``u_start = (u_{-1}, u_0)``; any ``u_0 != 0`` gives the same limit.  The
    standard error is computed from 50 batch means of the per-step
    increments ``-ln Zhat_k``, which accounts for their serial correlation.
    """
    n = int(n)
    if n < 1:
        raise ParameterError("n must be >= 1")
    um1, u0 = (complex(v) for v in u_start)
    if u0 == 0:
        raise ParameterError("u_0 must be non-zero")
    z = forward_ratios(source, t, n, um1 / u0)
    inc = -np.log(z)
    value = (cmath.log(u0) + inc.sum()) / n
    return GrowthEstimate(complex(value), _batch_se(inc), n)


def log_u_profile(source, t, n):
    """``ln|u_k|`` for ``k = 0..n`` (with ``u_{-1} = 0, u_0 = 1``)."""
    z = forward_ratios(source, t, n)
    return np.concatenate([[0.0], np.cumsum(-np.log(np.abs(z)))])


def successive_difference_logs(source, t, n):
    """``ln|S_{k+1}(t) - S_k(t)|`` for ``k = 0..n-1`` without underflow.

    Uses ``P_{k+1} Q_k - P_k Q_{k+1} = (-t)^k``, i.e.
    ``ln|S_{k+1} - S_k| = k ln|t| - ln|Q_k| - ln|Q_{k+1}|``
    ``                  = -ln|t|/2 - ln|u_k| - ln|u_{k+1}|``.
    """
    cut = as_cut(t)
    lu = log_u_profile(source, cut, n)
    return -0.5 * np.log(abs(cut.t)) - lu[:-1] - lu[1:]


def log_error_profile(source, t, n, tail=None):
    """``ln|S(t) - S_k(t)|`` for ``k = 0..n`` from the product representation

        Z - Z_k = (-1)^k / u_k * prod_{j=0..k} Z(T^j s),    Z = sqrt(t) S,

    with the shifted tails ``Z(T^j s)`` obtained by backward recursion from
    ``n + tail`` coefficients.
    """
    cut = as_cut(t)
    tail = max(200, n // 2) if tail is None else int(tail)
    s = _coefficients(source, n + 1 + tail)
    x = s / cut.sqrt
    lu = log_u_profile(s, cut, n)
    ztail = np.empty(len(x), dtype=complex)
    w = 0j
    for j in range(len(x) - 1, -1, -1):
        w = 1.0 / (x[j] + w)
        ztail[j] = w           # Z(T^j s)
    cum = np.cumsum(np.log(np.abs(ztail[: n + 1])))
    return -0.5 * np.log(abs(cut.t)) - lu + cum


class RateFit(NamedTuple):
    slope: float
    intercept: float
    stderr: float        # ordinary least-squares standard error of the slope
    rms_residual: float
    n_lo: int
    n_hi: int


def pade_error_rate(source, t, n_min, n_max) -> RateFit:
    """Least-squares slope of ``ln|S_{n+1} - S_n|`` against ``n``.

    The first ``max(50, n_max // 10)`` steps are dropped as transient; the
    fit runs over ``[max(n_min, transient), n_max]``.
    """
    n_min, n_max = int(n_min), int(n_max)
    if not n_max > n_min >= 1:
        raise ParameterError("need n_max > n_min >= 1")
    n_lo = max(n_min, 50, n_max // 10)
    if n_max - n_lo + 1 < 3:
        raise ParameterError("fewer than 3 points left for the fit")
    y = successive_difference_logs(source, t, n_max + 1)[n_lo:n_max + 1]
    k = np.arange(n_lo, n_max + 1, dtype=float)
    A = np.column_stack([k, np.ones_like(k)])
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    dof = max(len(k) - 2, 1)
    s2 = resid @ resid / dof
    se = np.sqrt(s2 / np.sum((k - k.mean()) ** 2))
    return RateFit(float(coef[0]), float(coef[1]), float(se),
                   float(np.sqrt(np.mean(resid ** 2))), n_lo, n_max)


def moments_from_coefficients(s):
    """Taylor data ``m_0..m_{2n-1}`` of ``S_{2n}`` from ``2n`` coefficients.

    With ``tau = -t`` every tail ``T_k = 1/(s_k - tau T_{k+1})`` has positive
    series coefficients, so the truncated power-series arithmetic runs on
    positive numbers only.  ``S(t) ~ sum m_j (-t)^j``.
    """
    s = np.asarray(s, dtype=float)
    if len(s) == 0 or len(s) % 2:
        raise ParameterError("need an even, non-zero number of coefficients")
    if np.any(~(s > 0)):
        raise ParameterError("coefficients must be strictly positive")
    L = len(s)
    T = np.zeros(L)
    T[0] = 1.0 / s[-1]
    for sk in s[-2::-1]:
        # new = 1/(sk - tau*T): c_0 = 1/sk, c_j = (1/sk) sum_{i=1..j} T_{i-1} c_{j-i}
        c = np.zeros(L)
        c[0] = 1.0 / sk
        for j in range(1, L):
            c[j] = np.dot(T[:j], c[j - 1::-1]) / sk
        T = c
    return T


class Reference(NamedTuple):
    value: complex
    certificate: float
    n: int


def reference_value(source, t, tol, n_max=10 ** 6) -> Reference:
    """Limit ``S(t)`` with an error bound.

    For real ``t > 0`` the even and odd convergents bracket the limit; the
    midpoint is returned once the bracket is narrower than ``tol`` and the
    certificate is half its width.  Elsewhere iteration stops once
    ``10 |S_{n+1} - S_n| <= tol`` and the certificate is ``10 |S_{n+1} - S_n|``.
    """
    if not tol > 0:
        raise ParameterError("tol must be positive")
    cut = as_cut(t)
    if isinstance(source, CoefficientStream):
        blocks = source.chunks()
    else:
        arr = as_coefficients(source, len(source))
        blocks = iter([arr[i:i + CHUNK] for i in range(0, len(arr), CHUNK)])
    first = next(blocks)
    s1 = float(first[0])
    r = cut.sqrt
    if r == 0:
        return Reference(1.0 / s1, 0.0, 1)
    bracket = cut.is_real_positive
    u_prev, u = 1 + 0j, s1 / r
    p_prev, p = 0j, 1.0 / r
    prev = p / u
    n = 1
    pending = first[1:].tolist()
    while n < n_max:
        if not pending:
            try:
                pending = next(blocks).tolist()
            except StopIteration:
                break
        for sk in pending:
            xk = sk / r
            u_prev, u = u, u_prev + xk * u
            p_prev, p = p, p_prev + xk * p
            m = abs(u)
            u_prev, u, p_prev, p = u_prev / m, u / m, p_prev / m, p / m
            n += 1
            cur = p / u
            diff = abs(cur - prev)
            if bracket and diff <= tol:
                mid = 0.5 * (cur + prev)
                return Reference(complex(mid.real, 0.0), 0.5 * diff, n)
            if not bracket and 10 * diff <= tol:
                return Reference(cur, 10 * diff, n)
            prev = cur
            if n >= n_max:
                break
        pending = []
    raise AccuracyError(f"no convergence to {tol} within n = {n}", best=prev)


def forward_iterates(params: GammaParams, t, n_chains, n_steps=64, seed=0, stream_index=0):
    """Independent forward iterates ``Zhat_{n_steps}`` from ``n_chains`` chains.

    Each chain starts at ``Zhat_0 = 0`` and uses its own coefficients; after
    ``n_steps`` steps the law of ``Zhat`` is that of the truncation ``Z_n``,
    which converges geometrically to the stationary law.
    """
    cut = as_cut(t)
    stream = make_stream(params, seed, stream_index)
    s = stream.take(n_steps * n_chains).reshape(n_steps, n_chains)
    x = s / cut.sqrt
    z = np.zeros(n_chains, dtype=complex)
    for row in x:
        z = 1.0 / (row + z)
    return z
