from dataclasses import dataclass, field
from functools import partial

import numpy as np

from src.enums import ChiMethod
from src.exceptions import InvalidParametersError, LMGError
from src.fidelity.susceptibility import ChiEstimate, chi
from src.model import ModelParams
from src.pool import run_ordered
from src.settings import DEFAULT_TOL, DENSE_CAP


@dataclass(frozen=True)
class CurveSample:
    h: float
    estimate: ChiEstimate | None
    error: str = field(default="")

    @property
    def value(self) -> float:
        return self.estimate.value if self.estimate is not None else float("nan")

    @property
    def flag(self) -> str:
        if self.estimate is None:
            return f"error: {self.error}"
        return self.estimate.flag


@dataclass(frozen=True)
class FidelityCurve:
    """Sampled chi_F(h) at fixed (N, gamma)."""

    N: int
    gamma: float
    samples: tuple[CurveSample, ...]

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))
        hs = [s.h for s in self.samples]
        if any(b <= a for a, b in zip(hs, hs[1:])):
            raise InvalidParametersError("curve samples must have strictly increasing h")

    @property
    def hs(self) -> np.ndarray:
        return np.array([s.h for s in self.samples])

    @property
    def values(self) -> np.ndarray:
        return np.array([s.value for s in self.samples])

    def valid(self) -> "FidelityCurve":
        """The same curve without the failed points."""
        return FidelityCurve(
            self.N, self.gamma, tuple(s for s in self.samples if s.estimate is not None)
        )


def _sample(
    h: float, N: int, gamma: float, lam: float, tol: float, dense_cap: int
) -> CurveSample:
    try:
        estimate = chi(ModelParams(N, gamma, h, lam), tol, dense_cap)
    except LMGError as exc:
        return CurveSample(h, None, str(exc))
    return CurveSample(h, estimate)


def sweep_curve(
    N: int,
    gamma: float,
    h_grid,
    jobs: int = 1,
    lam: float = 1.0,
    tol: float = DEFAULT_TOL,
    dense_cap: int = DENSE_CAP,
) -> FidelityCurve:
    """chi_F at every grid point; a failing point is recorded, not raised."""
    grid = [float(h) for h in h_grid]
    if not grid:
        raise InvalidParametersError("h grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidParametersError("h grid must be strictly ascending")
    ModelParams(N, gamma, grid[0], lam)
    task = partial(_sample, N=N, gamma=gamma, lam=lam, tol=tol, dense_cap=dense_cap)
    samples = run_ordered(task, grid, jobs, desc=f"chi_F N={N} gamma={gamma:g}")
    return FidelityCurve(N, gamma, tuple(samples))


def method_for(N: int, dense_cap: int = DENSE_CAP) -> ChiMethod:
    return ChiMethod.PERTURBATIVE if N + 1 <= dense_cap else ChiMethod.OVERLAP
