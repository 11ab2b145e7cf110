"""Estimate nu by collapsing (chi_max - chi) / chi onto one function of N^nu (h - h_max).

The spread of a trial collapse is the mean squared difference between every
pair of curves, each interpolated piecewise-linearly onto a uniform grid
covering the x-range all curves share.
"""

import itertools
import math
import typing
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from src.enums import Quantity
from src.exceptions import CollapseError
from src.fidelity import FidelityCurve
from src.scaling.fits import ScalingFit
from src.scaling.peak import PeakResult
from src.settings import (
    COLLAPSE_GRID_POINTS,
    COLLAPSE_HALF_WIDTH,
    COLLAPSE_SAMPLES,
    COLLAPSE_WINDOW_EXPONENT,
    NU_SCAN,
)

# scan points within this factor of the minimum count as equally good
_BAND_FACTOR = 1.1


@dataclass(frozen=True)
class RescaledCurve:
    N: int
    h: np.ndarray
    chi: np.ndarray
    x: np.ndarray
    y: np.ndarray


@dataclass(frozen=True)
class CollapseResult:
    nu: float
    objective: float
    curves: tuple[RescaledCurve, ...]
    uncertainty: float
    scan: tuple[np.ndarray, np.ndarray]

    def as_fit(self) -> ScalingFit:
        sizes = [c.N for c in self.curves]
        return ScalingFit(
            quantity=Quantity.NU,
            exponent=self.nu,
            uncertainty=self.uncertainty,
            residual=math.sqrt(self.objective),
            size_range=(min(sizes), max(sizes)),
        )


def collapse_window(
    h_max: float,
    N: int,
    exponent: float = COLLAPSE_WINDOW_EXPONENT,
    half_width: float = COLLAPSE_HALF_WIDTH,
    samples: int = COLLAPSE_SAMPLES,
) -> np.ndarray:
    """h-grid centred on h_max, as wide as N^-exponent times half_width each way."""
    return h_max + N ** (-exponent) * np.linspace(-half_width, half_width, samples)


def rescale(curve: FidelityCurve, peak: PeakResult, nu: float) -> RescaledCurve:
    usable = [s for s in curve.samples if s.estimate is not None and s.value > 0]
    if len(usable) < 2:
        raise CollapseError(f"curve N={curve.N} has fewer than 2 usable samples")
    h = np.array([s.h for s in usable])
    chi = np.array([s.value for s in usable])
    return RescaledCurve(
        N=curve.N,
        h=h,
        chi=chi,
        x=curve.N**nu * (h - peak.h_max),
        y=(peak.chi_max - chi) / chi,
    )


def _spread(rescaled: typing.Sequence[RescaledCurve], grid_points: int) -> float:
    lo = max(c.x[0] for c in rescaled)
    hi = min(c.x[-1] for c in rescaled)
    if not hi > lo:
        raise CollapseError("rescaled curves share no x-range")
    grid = np.linspace(lo, hi, grid_points)
    ys = [np.interp(grid, c.x, c.y) for c in rescaled]
    return float(np.mean([np.mean((a - b) ** 2) for a, b in itertools.combinations(ys, 2)]))


def collapse_objective(
    curves: typing.Sequence[FidelityCurve],
    peaks: typing.Sequence[PeakResult],
    nu: float,
    grid_points: int = COLLAPSE_GRID_POINTS,
) -> float:
    return _spread([rescale(c, p, nu) for c, p in zip(curves, peaks)], grid_points)


def _check_inputs(curves, peaks):
    if len(curves) != len(peaks):
        raise CollapseError("every curve needs its peak")
    for curve, peak in zip(curves, peaks):
        if curve.N != peak.N:
            raise CollapseError(f"curve N={curve.N} paired with peak N={peak.N}")
    if len({c.N for c in curves}) < 3:
        raise CollapseError("a collapse needs at least 3 distinct system sizes")


def _band_half_width(nus: np.ndarray, objectives: np.ndarray, best: int) -> float:
    threshold = _BAND_FACTOR * objectives[best]
    left = right = best
    while left > 0 and objectives[left - 1] <= threshold:
        left -= 1
    while right < len(nus) - 1 and objectives[right + 1] <= threshold:
        right += 1
    return (nus[right] - nus[left]) / 2


def estimate_nu_collapse(
    curves: typing.Sequence[FidelityCurve],
    peaks: typing.Sequence[PeakResult],
    scan: tuple[float, float, float] = NU_SCAN,
    grid_points: int = COLLAPSE_GRID_POINTS,
) -> CollapseResult:
    """Scan nu on a uniform grid, then refine between the best point's neighbours."""
    _check_inputs(curves, peaks)
    start, stop, step = scan
    nus = np.arange(start, stop + step / 2, step)

    def objective(nu: float) -> float:
        try:
            return collapse_objective(curves, peaks, nu, grid_points)
        except CollapseError:
            return math.inf

    objectives = np.array([objective(nu) for nu in nus])
    if not np.isfinite(objectives).any():
        raise CollapseError("rescaled curves share no x-range for any scanned nu")
    best = int(np.argmin(objectives))

    refined = minimize_scalar(
        objective,
        bounds=(nus[max(best - 1, 0)], nus[min(best + 1, len(nus) - 1)]),
        method="bounded",
        options={"xatol": step * 1e-3},
    )
    nu, value = float(nus[best]), float(objectives[best])
    if refined.fun <= value:
        nu, value = float(refined.x), float(refined.fun)

    return CollapseResult(
        nu=nu,
        objective=value,
        curves=tuple(rescale(c, p, nu) for c, p in zip(curves, peaks)),
        uncertainty=max(step / 2, _band_half_width(nus, objectives, best)),
        scan=(nus, objectives),
    )
