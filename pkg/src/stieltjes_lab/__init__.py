"""Random Stieltjes continued fractions: convergents, Jacobi spectra and
closed-form Bessel predictions for gamma-distributed coefficients."""

from . import cfrac, coeffs, jacobi, quadrature, specfun, theory
from .coeffs import Constant, CoefficientStream, GammaParams, make_stream
from .errors import (AccuracyError, ConfigError, ConsistencyError, DomainError,
                     ParameterError, PoleError, StieltjesError)

__version__ = "0.1.0"
