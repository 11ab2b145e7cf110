import typing
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from src.exceptions import ConvergenceWarning, InvalidParametersError, NoInteriorMaximumError
from src.fidelity import chi
from src.model import ModelParams
from src.settings import (
    DEFAULT_TOL,
    DENSE_CAP,
    PEAK_BRACKET_FLOOR,
    PEAK_BRACKET_SCALE,
    PEAK_BUDGET,
    PEAK_SAMPLES,
    PEAK_TOL_H,
)

type ChiFunction = typing.Callable[[float], float]


@dataclass(frozen=True)
class PeakResult:
    N: int
    gamma: float
    h_max: float
    chi_max: float
    refinement_width: float
    evaluations: int = field(default=0)

    def __post_init__(self):
        if not self.h_max > 0:
            raise InvalidParametersError(f"h_max must be > 0, got {self.h_max}")
        if not self.refinement_width >= 0:
            raise InvalidParametersError("refinement_width must be >= 0")

    def __json__(self):
        """Return self in a JSON-serialisable format."""
        return {
            "N": self.N,
            "gamma": self.gamma,
            "h_max": self.h_max,
            "chi_max": self.chi_max,
            "refinement_width": self.refinement_width,
            "evaluations": self.evaluations,
        }


def default_bracket(N: int) -> tuple[float, float]:
    """Search interval below h = 1, narrowing like N^(-2/3) with the peak width."""
    lo = max(PEAK_BRACKET_FLOOR, 1 - PEAK_BRACKET_SCALE * N ** (-2 / 3))
    return lo, 1.0


class _CountingOracle:
    def __init__(self, func: ChiFunction):
        self.func = func
        self.seen: dict[float, float] = {}

    def __call__(self, h: float) -> float:
        h = float(h)
        if h not in self.seen:
            self.seen[h] = float(self.func(h))
        return self.seen[h]

    def bracket_around(self, h_max: float, lo: float, hi: float) -> float:
        left = max((h for h in self.seen if h < h_max), default=lo)
        right = min((h for h in self.seen if h > h_max), default=hi)
        return right - left


def _model_chi(
    N: int, gamma: float, lam: float, tol: float, dense_cap: int
) -> ChiFunction:
    def evaluate(h: float) -> float:
        return chi(ModelParams(N, gamma, h, lam), tol, dense_cap).value

    return evaluate


def locate_peak(
    N: int,
    gamma: float,
    bracket: tuple[float, float] | None = None,
    tol_h: float = PEAK_TOL_H,
    chi_fn: ChiFunction | None = None,
    budget: int = PEAK_BUDGET,
    lam: float = 1.0,
    tol: float = DEFAULT_TOL,
    dense_cap: int = DENSE_CAP,
) -> PeakResult:
    """Maximum of chi_F(h) inside bracket.

    A coarse scan picks the best interior sample, then bounded Brent
    (golden section with parabolic steps) refines between its neighbours
    until the bracket is below tol_h relative to h. chi_fn replaces the model
    susceptibility, e.g. by a synthetic curve.
    """
    lo, hi = default_bracket(N) if bracket is None else bracket
    if not 0 < lo < hi:
        raise InvalidParametersError(f"bracket must satisfy 0 < lo < hi, got {(lo, hi)}")
    if not tol_h > 0:
        raise InvalidParametersError(f"tol_h must be > 0, got {tol_h}")
    if budget <= PEAK_SAMPLES:
        raise InvalidParametersError(f"budget must exceed {PEAK_SAMPLES} evaluations")

    oracle = _CountingOracle(
        chi_fn if chi_fn is not None else _model_chi(N, gamma, lam, tol, dense_cap)
    )
    grid = np.linspace(lo, hi, PEAK_SAMPLES)
    samples = [oracle(h) for h in grid]
    best = int(np.argmax(samples))
    if best in (0, len(grid) - 1):
        raise NoInteriorMaximumError(
            f"chi_F has no interior maximum in [{lo:g}, {hi:g}] for N={N}, "
            f"gamma={gamma:g}",
            list(zip(grid.tolist(), samples)),
        )

    result = minimize_scalar(
        lambda h: -oracle(h),
        bounds=(grid[best - 1], grid[best + 1]),
        method="bounded",
        options={"xatol": tol_h * hi, "maxiter": budget - PEAK_SAMPLES},
    )
    if not result.success:
        warnings.warn(
            f"peak refinement for N={N}, gamma={gamma:g} stopped after "
            f"{result.nfev} evaluations: {result.message}",
            ConvergenceWarning,
        )
    h_max, chi_max = max(oracle.seen.items(), key=lambda item: item[1])
    return PeakResult(
        N=N,
        gamma=gamma,
        h_max=h_max,
        chi_max=chi_max,
        refinement_width=oracle.bracket_around(h_max, lo, hi),
        evaluations=len(oracle.seen),
    )
