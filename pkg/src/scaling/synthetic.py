"""A known peaked chi_F(h) with prescribed mu, nu and delta, for plumbing runs."""

from dataclasses import dataclass, field
from functools import partial

import numpy as np

from src.enums import ChiMethod
from src.exceptions import InvalidParametersError
from src.fidelity import ChiEstimate, CurveSample, FidelityCurve
from src.settings import H_C


def synthetic_chi(
    h: float,
    N: int,
    amplitude: float,
    mu: float,
    nu: float,
    delta: float,
    h_c: float = H_C,
) -> float:
    """amplitude N^mu / (1 + (N^nu (h - h_max))^2) with h_max = h_c - N^-delta.

    >>> synthetic_chi(0.5, 1, 2.0, 1.0, 0.5, 1.0)
    1.6
    """
    h_max = h_c - N ** (-delta)
    return amplitude * N**mu / (1 + (N**nu * (h - h_max)) ** 2)


@dataclass(frozen=True)
class SyntheticChi:
    mu: float
    nu: float
    delta: float
    amplitude: float = field(default=1.0)
    h_c: float = field(default=H_C)

    def __post_init__(self):
        if not self.amplitude > 0:
            raise InvalidParametersError("amplitude must be > 0")
        if not (self.nu > 0 and self.delta > 0):
            raise InvalidParametersError("nu and delta must be > 0")

    def h_max(self, N: int) -> float:
        return self.h_c - N ** (-self.delta)

    def chi_max(self, N: int) -> float:
        return self.amplitude * N**self.mu

    def for_size(self, N: int) -> partial:
        """chi_F(h) at size N; a partial so it pickles into worker processes."""
        return partial(
            synthetic_chi,
            N=N,
            amplitude=self.amplitude,
            mu=self.mu,
            nu=self.nu,
            delta=self.delta,
            h_c=self.h_c,
        )

    def curve(self, N: int, h_grid, gamma: float = 0.0) -> FidelityCurve:
        func = self.for_size(N)
        samples = tuple(
            CurveSample(float(h), ChiEstimate(func(float(h)), ChiMethod.SYNTHETIC))
            for h in np.asarray(h_grid, dtype=np.float64)
        )
        return FidelityCurve(N, gamma, samples)
