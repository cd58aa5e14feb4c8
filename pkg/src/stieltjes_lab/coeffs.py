"""Reproducible coefficient sequences s_1, s_2, ...

A :class:`CoefficientStream` is a value: it stores only its recipe (kind,
seed, stream index) and regenerates the sequence on demand.  Random draws are
produced in fixed-size chunks from a generator seeded by
``SeedSequence(seed, spawn_key=(stream_index,))``, so any prefix is identical
no matter how it is requested.
"""

from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from .errors import ParameterError

__all__ = ["GammaParams", "Constant", "CoefficientStream", "gamma_sample",
           "make_stream", "as_coefficients", "CHUNK"]

CHUNK = 4096


@dataclass(frozen=True)
class GammaParams:
    """Gamma law with density x^(a-1) exp(-x/b) / (b^a Gamma(a))."""

    a: float
    b: float

    def __post_init__(self):
        if not (np.isfinite(self.a) and self.a > 0):
            raise ParameterError(f"gamma shape a must be positive, got {self.a}")
        if not (np.isfinite(self.b) and self.b > 0):
            raise ParameterError(f"gamma scale b must be positive, got {self.b}")

    @classmethod
    def unit_mean(cls, a):
        """Shape ``a`` with scale ``1/a``: mean 1 and variance ``1/a``."""
        return cls(float(a), 1.0 / a)

    @property
    def mean(self):
        return self.a * self.b

    @property
    def var(self):
        return self.a * self.b ** 2


@dataclass(frozen=True)
class Constant:
    """Deterministic baseline stream s_n = c."""

    c: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.c) and self.c > 0):
            raise ParameterError(f"constant coefficient must be positive, got {self.c}")


Kind = Union[GammaParams, Constant]


def gamma_sample(params: GammaParams, rng: np.random.Generator, size=None):
    """Draw from the gamma law ``params`` using ``rng``.

    numpy's sampler is Marsaglia-Tsang squeeze/rejection for shape >= 1 and a
    dedicated rejection scheme below 1; it consumes the bit generator one
    variate at a time, which is what makes chunked replay exact.
    """
    if not isinstance(params, GammaParams):
        raise ParameterError("gamma_sample needs GammaParams")
    return rng.gamma(params.a, params.b, size)


@dataclass(frozen=True)
class CoefficientStream:
    kind: Kind
    seed: int = 0
    stream_index: int = 0

    def __post_init__(self):
        if not isinstance(self.kind, (GammaParams, Constant)):
            raise ParameterError(f"unsupported stream kind {self.kind!r}")
        if self.stream_index < 0:
            raise ParameterError("stream_index must be >= 0")

    @property
    def is_random(self):
        return isinstance(self.kind, GammaParams)

    def rng(self):
        ss = np.random.SeedSequence(int(self.seed) & (2 ** 64 - 1),
                                    spawn_key=(int(self.stream_index),))
        return np.random.Generator(np.random.PCG64(ss))

    def chunks(self) -> Iterator[np.ndarray]:
        """Endless iterator over consecutive chunks of ``CHUNK`` coefficients."""
        if not self.is_random:
            block = np.full(CHUNK, float(self.kind.c))
            while True:
                yield block.copy()
        rng = self.rng()
        while True:
            yield gamma_sample(self.kind, rng, CHUNK)

    def take(self, n) -> np.ndarray:
        """The first ``n`` coefficients as an array (s_1 is element 0)."""
        n = int(n)
        if n < 0:
            raise ParameterError("n must be >= 0")
        if not self.is_random:
            return np.full(n, float(self.kind.c))
        out = np.empty(n)
        filled = 0
        for block in self.chunks():
            if filled >= n:
                break
            m = min(CHUNK, n - filled)
            out[filled:filled + m] = block[:m]
            filled += m
        return out

    def __iter__(self):
        for block in self.chunks():
            yield from block.tolist()


def make_stream(kind: Kind, seed: int = 0, stream_index: int = 0) -> CoefficientStream:
    """Build a stream; ``kind`` may also be a positive number for a constant stream."""
    if isinstance(kind, (int, float)) and not isinstance(kind, bool):
        kind = Constant(float(kind))
    return CoefficientStream(kind, seed, stream_index)


def as_coefficients(source, n) -> np.ndarray:
    """First ``n`` coefficients of a stream, or of an explicit sequence."""
    if isinstance(source, CoefficientStream):
        return source.take(n)
    s = np.asarray(source, dtype=float)
    if s.ndim != 1 or len(s) < n:
        raise ParameterError(f"need at least {n} coefficients, got {s.size}")
    s = s[:n]
    if np.any(~(s > 0)):
        raise ParameterError("coefficients must be strictly positive")
    return s
