"""Quadrature measure of a truncated continued fraction.

For coefficients close to 1 the Gauss measure sigma_n is close to the
measure of the constant fraction, whose CDF is (2 phi + sin 2 phi) / pi with
lambda = 4 sin^2 phi.  Christoffel weights are computed in log space, so the
tiny weights near the top of the spectrum are still resolved.
"""

import numpy as np

from stieltjes_lab import GammaParams, make_stream
from stieltjes_lab.jacobi import build_jacobi, quadrature_measure
from stieltjes_lab.theory import sigma_inf_cdf

for a in (64.0, 1024.0):
    s = make_stream(GammaParams.unit_mean(a), 3).take(400)
    m = quadrature_measure(build_jacobi(s))
    cdf = np.cumsum(m.weights) * s[0]
    print(f"a = {a:g}: mass {m.mass:.12f} (1/s1 = {1 / s[0]:.12f})")
    for lam in (0.5, 1.0, 2.0, 3.0, 3.9):
        k = np.searchsorted(m.nodes, lam)
        emp = cdf[k - 1] if k else 0.0
        print(f"   lambda {lam:4.1f}  sigma_n {emp:.5f}  sigma_inf {sigma_inf_cdf(lam):.5f}")
    print(f"   smallest log-weight {m.log_weights.min():.1f}")
