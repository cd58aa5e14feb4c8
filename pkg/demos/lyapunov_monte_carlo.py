"""Complex Lyapunov exponent: simulation against the Bessel closed form."""

from stieltjes_lab import GammaParams, make_stream
from stieltjes_lab.cfrac import log_growth
from stieltjes_lab.theory import lyapunov_gamma

cases = [(GammaParams(1, 1), 1.0), (GammaParams(2, 1), 1 + 1j),
         (GammaParams(8, 1 / 8), 0.3), (GammaParams(0.5, 2), -0.2 + 0.5j)]

for i, (p, t) in enumerate(cases):
    est = log_growth(make_stream(p, 11, i), t, 10 ** 6)
    exact = lyapunov_gamma(p, t).value
    zr = (est.value.real - exact.real) / est.stderr.real
    print(f"a={p.a:<4g} b={p.b:<6g} t={t!s:<12} "
          f"MC {est.value:.6f}  exact {exact:.6f}  z(Re) {zr:+.2f}")
