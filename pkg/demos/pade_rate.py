"""Geometric convergence of the Pade approximants.

The fitted slope of ln|S - S_n| against n is compared with -2 Re Lambda.
"""

import numpy as np

from stieltjes_lab import GammaParams, make_stream
from stieltjes_lab.cfrac import pade_error_rate
from stieltjes_lab.theory import pade_rate

p, t = GammaParams(2, 1), 1.0
slopes = [pade_error_rate(make_stream(p, seed), t, 1000, 10 ** 4).slope for seed in range(5)]
theory = pade_rate(p, t)
print("per-seed slopes:", " ".join(f"{s:.5f}" for s in slopes))
print(f"mean {np.mean(slopes):.5f}  theory {theory:.5f}  "
      f"relative gap {abs(np.mean(slopes) / theory - 1):.2%}")
