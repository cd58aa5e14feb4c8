"""Truncated Jacobi matrices, their spectra and Gaussian quadrature.

For coefficients ``s_1..s_{2n}`` the matrix ``J_n`` has

    v_0 = 1/(s_1 s_2),  v_k = (1/s_{2k+1}) (1/s_{2k} + 1/s_{2k+2}),
    h_k = 1/(s_{2k+2} sqrt(s_{2k+1} s_{2k+3})),

and factors as ``B^T B`` with ``B`` upper bidiagonal,
``B_kk^2 = 1/(s_{2k+1} s_{2k+2})`` and ``B_{k,k+1}^2 = 1/(s_{2k+2} s_{2k+3})``.
Sturm counts are run on that factorisation (a stationary qd sweep), which
determines even the smallest eigenvalues to high relative accuracy.
Eigenvalues come from simultaneous bisection over all indices.  Quadrature
weights come from the orthonormal polynomials evaluated on both sides of
the eigenvector's peak; a batched inverse iteration gives an independent
check on them.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ParameterError

__all__ = ["JacobiMatrix", "DiscreteMeasure", "build_jacobi", "sturm_count",
           "eigenvalues", "quadrature_measure", "christoffel_weights", "christoffel_log_weights",
           "counting_measure", "psi_even", "first_components", "eigenvector_weights"]

_CLAMP = 1e300
_TINY = 1e-300


@dataclass(frozen=True)
class JacobiMatrix:
    """Symmetric tridiagonal ``J_n``; ``q``/``e2`` hold the bidiagonal factor
    squares when the matrix was built from continued-fraction coefficients."""

    v: np.ndarray
    h: np.ndarray
    s1: float = 1.0
    q: Optional[np.ndarray] = None
    e2: Optional[np.ndarray] = None

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float)
        h = np.asarray(self.h, dtype=float)
        if v.ndim != 1 or len(v) < 1 or len(h) != len(v) - 1:
            raise ParameterError("need n diagonal and n-1 off-diagonal entries")
        if np.any(~(h > 0)):
            raise ParameterError("off-diagonal entries must be positive")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "h", h)

    @property
    def n(self):
        return len(self.v)

    @property
    def mass(self):
        """Total mass ``m_0 = 1/s_1`` of the spectral measure."""
        return 1.0 / self.s1

    def dense(self):
        return np.diag(self.v) + np.diag(self.h, 1) + np.diag(self.h, -1)

    def gershgorin(self):
        off = np.zeros(self.n)
        off[:-1] += self.h
        off[1:] += self.h
        return float(np.min(self.v - off)), float(np.max(self.v + off))


@dataclass(frozen=True)
class DiscreteMeasure:
    """Point masses ``weights`` at ascending ``nodes``.

    ``log_weights``, when present, stays finite for weights that underflow.
    """

    nodes: np.ndarray
    weights: np.ndarray
    log_weights: Optional[np.ndarray] = None

    @property
    def mass(self):
        return float(self.weights.sum())

    def moment(self, k):
        return float(np.sum(self.nodes ** k * self.weights))

    def cdf(self, x):
        """``sigma_n([0, x])`` for each entry of ``x``."""
        cum = np.concatenate([[0.0], np.cumsum(self.weights)])
        return cum[np.searchsorted(self.nodes, np.asarray(x, dtype=float), side="right")]


def build_jacobi(s) -> JacobiMatrix:
    """Jacobi matrix ``J_n`` from exactly ``2n`` positive coefficients."""
    s = np.asarray(s, dtype=float)
    if s.ndim != 1 or len(s) < 2 or len(s) % 2:
        raise ParameterError(f"need an even number (>= 2) of coefficients, got {s.size}")
    if np.any(~(s > 0)):
        raise ParameterError("coefficients must be strictly positive")
    odd, even = s[0::2], s[1::2]          # s_1, s_3, ... and s_2, s_4, ...
    q = 1.0 / (odd * even)                # 1/(s_{2k+1} s_{2k+2})
    e2 = 1.0 / (odd[1:] * even[:-1])      # 1/(s_{2k+3} s_{2k+2})
    v = q.copy()
    v[1:] += e2
    h = np.sqrt(q[:-1] * e2)
    return JacobiMatrix(v, h, float(s[0]), q, e2)


def _sturm_counts(J: JacobiMatrix, lam):
    lam = np.asarray(lam, dtype=float)
    count = np.zeros(lam.shape, dtype=np.int64)
    if J.q is not None:
        # stationary qd: p_k = q_k + d_k,  d_{k+1} = e2_k d_k / p_k - lam
        d = -lam
        for k in range(J.n):
            p = J.q[k] + d
            p = np.where(p == 0, -_TINY, p)
            count += p < 0
            if k < J.n - 1:
                d = np.clip(J.e2[k] * d / p, -_CLAMP, _CLAMP) - lam
        return count
    h2 = J.h ** 2
    p = J.v[0] - lam
    for k in range(J.n):
        if k:
            p = J.v[k] - lam - h2[k - 1] / p
        p = np.where(p == 0, -_TINY, p)
        p = np.clip(p, -_CLAMP, _CLAMP)
        count += p < 0
    return count


def sturm_count(J: JacobiMatrix, lam):
    """Number of eigenvalues of ``J`` strictly below ``lam`` (vectorised).

    A zero pivot is read as a negative one, i.e. as though ``lam`` had been
    nudged up by one ulp.
    """
    out = _sturm_counts(J, lam)
    return int(out) if np.ndim(out) == 0 else out


def eigenvalues(J: JacobiMatrix, tol=1e-14, max_iter=400):
    """All eigenvalues in ascending order by simultaneous Sturm bisection.

    Every bracket is shrunk to relative width ``tol`` (so also to
    ``tol * max(1, |lam|)``).
    """
    if not tol > 0:
        raise ParameterError("tol must be positive")
    n = J.n
    g_lo, g_hi = J.gershgorin()
    if J.q is not None:
        g_lo = 0.0                       # B^T B is positive semidefinite
    lo = np.full(n, g_lo)
    hi = np.full(n, g_hi * (1 + 1e-15) + 1e-300)
    idx = np.arange(n)
    active = np.ones(n, dtype=bool)
    for _ in range(max_iter):
        a = np.nonzero(active)[0]
        if a.size == 0:
            break
        mid = 0.5 * (lo[a] + hi[a])
        stuck = (mid == lo[a]) | (mid == hi[a])   # bracket at machine resolution
        c = _sturm_counts(J, mid)
        above = c > idx[a]               # eigenvalue j lies below mid
        hi[a[above]] = mid[above]
        lo[a[~above]] = mid[~above]
        width = hi[a] - lo[a]
        scale = np.maximum(np.abs(lo[a]), np.abs(hi[a]))
        done = (width <= tol * scale) | (width <= 1e-300) | stuck
        active[a[done]] = False
    return 0.5 * (lo + hi)


def first_components(J: JacobiMatrix, nodes, iterations=3):
    """Squared first components of the normalised eigenvectors at ``nodes``.

    Batched inverse iteration: one tridiagonal solve per node per sweep,
    vectorised over nodes, with zero pivots replaced by a tiny multiple of
    the matrix scale.
    """
    nodes = np.asarray(nodes, dtype=float)
    n, m = J.n, len(nodes)
    v, h = J.v, J.h
    floor = np.finfo(float).eps * max(1.0, float(np.max(np.abs(v)) + (h.max() if n > 1 else 0)))
    x = np.ones((n, m))
    for _ in range(iterations):
        # forward elimination
        piv = np.empty((n, m))
        rhs = np.empty((n, m))
        p = v[0] - nodes
        p = np.where(np.abs(p) < floor, floor, p)
        piv[0], rhs[0] = p, x[0]
        for k in range(1, n):
            f = h[k - 1] / piv[k - 1]
            p = v[k] - nodes - f * h[k - 1]
            p = np.where(np.abs(p) < floor, floor, p)
            piv[k] = p
            rhs[k] = x[k] - f * rhs[k - 1]
        y = np.empty((n, m))
        y[-1] = rhs[-1] / piv[-1]
        for k in range(n - 2, -1, -1):
            y[k] = (rhs[k] - h[k] * y[k + 1]) / piv[k]
        x = y / np.sqrt(np.sum(y * y, axis=0))
    return x[0] ** 2


def christoffel_weights(J: JacobiMatrix, nodes):
    """Weights ``(sum_{l<n} psi_l(lam)^2)^-1``; see :func:`christoffel_log_weights`."""
    return np.exp(christoffel_log_weights(J, nodes))


def christoffel_log_weights(J: JacobiMatrix, nodes):
    """Logarithms of ``(sum_{l<n} psi_l(lam)^2)^-1`` at eigenvalues ``nodes``.

    The orthonormal polynomials are run forward from ``psi_0 = sqrt(s_1)``
    only up to a twist index ``k``; beyond it they are run backward from
    ``psi_n(lam) = 0``.  A plain forward sweep amplifies the rounding of the
    node by ``exp(n * growth)`` once ``psi`` starts to decay, so at ``n = 64``
    it can lose every digit.  ``k`` minimises ``|gamma_k|`` of the twisted
    factorisation, which puts it at the peak of ``psi``.  Everything is
    accumulated in log-magnitudes.
    """
    nodes = np.asarray(nodes, dtype=float)
    n, m = J.n, len(nodes)
    if n == 1:
        return np.full(m, np.log(J.mass))
    v, h = J.v, J.h
    floor = np.finfo(float).eps * max(1.0, float(np.max(np.abs(v)) + h.max()))

    def guard(p):
        return np.where(np.abs(p) < floor, floor, p)

    diag = v[:, None] - nodes[None, :]
    dp = np.empty((n, m))
    dm = np.empty((n, m))
    dp[0] = guard(diag[0])
    for k in range(1, n):
        dp[k] = guard(diag[k] - h[k - 1] ** 2 / dp[k - 1])
    dm[-1] = guard(diag[-1])
    for k in range(n - 2, -1, -1):
        dm[k] = guard(diag[k] - h[k] ** 2 / dm[k + 1])
    gamma = dp + dm - diag
    twist = np.argmin(np.abs(gamma), axis=0)

    # log|psi_k / psi_{k+1}| below the twist, log|psi_{k+1} / psi_k| above it
    down = np.log(h[:, None]) - np.log(np.abs(dp[:-1]))
    up = np.log(h[:, None]) - np.log(np.abs(dm[1:]))
    zero = np.zeros((1, m))
    cf = np.concatenate([zero, np.cumsum(down, axis=0)])
    cb = np.concatenate([zero, np.cumsum(up, axis=0)])
    cols = np.arange(m)
    k = np.arange(n)[:, None]
    logx = np.where(k < twist, cf[twist, cols] - cf, cb - cb[twist, cols])
    top = logx.max(axis=0)
    total = np.sum(np.exp(2 * (logx - top)), axis=0)
    return np.log(J.mass) + 2 * (logx[0] - top) - np.log(total)


def eigenvector_weights(J: JacobiMatrix, nodes):
    """``(1/s_1) * (first eigenvector component)^2`` by inverse iteration.

    Accurate to about ``eps * mass`` in absolute terms only; weights far
    below that (eigenvectors localised away from the first row) come out
    as rounding noise.  Used as an independent check on
    :func:`christoffel_weights`.
    """
    return J.mass * first_components(J, nodes)


def quadrature_measure(J: JacobiMatrix, tol=1e-14) -> DiscreteMeasure:
    """Gaussian quadrature measure: eigenvalues with the Christoffel weights.

    The weights keep their relative accuracy even when they are tiny, which
    the high moments ``sum lam^k w`` depend on.
    """
    nodes = eigenvalues(J, tol)
    logw = christoffel_log_weights(J, nodes)
    return DiscreteMeasure(nodes, np.exp(logw), logw)


def counting_measure(nodes, grid):
    """``N_n(lam) = #{nodes < lam} / n`` on ``grid``."""
    nodes = np.asarray(nodes, dtype=float)
    return np.searchsorted(nodes, np.asarray(grid, dtype=float), side="left") / len(nodes)


def psi_even(s, lam):
    """``lam^n Q_{2n}(-1/lam)`` from ``2n`` raw coefficients.

    A positive multiple of ``psi_n``, hence vanishing exactly on the
    spectrum of ``J_n``.  Uses ``A_{2m} = s_{2m} A_{2m-1} - A_{2m-2}`` and
    ``A_{2m+1} = s_{2m+1} lam A_{2m} - A_{2m-1}``, rescaled on the fly; the
    sign is exact and the magnitude is returned up to a positive factor.
    """
    s = np.asarray(s, dtype=float)
    lam = np.asarray(lam, dtype=float)
    prev, cur = np.zeros_like(lam), np.ones_like(lam)   # A_{-1}, A_0
    for k, sk in enumerate(s, start=1):
        nxt = (sk * lam * cur if k % 2 else sk * cur) - prev
        prev, cur = cur, nxt
        f = np.maximum(np.abs(cur), 1.0)
        prev, cur = prev / f, cur / f
    return cur
