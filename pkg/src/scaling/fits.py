import math
import typing
from dataclasses import dataclass

import numpy as np
from scipy.stats import linregress

from src.analytic import alpha_exponent
from src.enums import Phase, Quantity
from src.exceptions import FitError
from src.settings import ALPHA_TOLERANCE, H_C, SizeWindow

if typing.TYPE_CHECKING:
    from src.scaling.peak import PeakResult

# linregress reports exactly 0 on noiseless data; the fit still has float resolution
_UNCERTAINTY_FLOOR = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class ScalingFit:
    quantity: Quantity
    exponent: float
    uncertainty: float
    residual: float
    size_range: SizeWindow

    def __post_init__(self):
        if not self.uncertainty > 0:
            raise FitError(f"uncertainty must be > 0, got {self.uncertainty}")
        if not self.residual >= 0:
            raise FitError(f"residual must be >= 0, got {self.residual}")

    def __json__(self):
        """Return self in a JSON-serialisable format."""
        return {
            "quantity": self.quantity.value,
            "exponent": self.exponent,
            "uncertainty": self.uncertainty,
            "residual": self.residual,
            "size_range": list(self.size_range),
        }


def fit_power_law(
    points: typing.Iterable[tuple[int, float]],
    quantity: Quantity = Quantity.MU,
) -> ScalingFit:
    """Least-squares slope of log(value) against log(N)."""
    points = sorted(points)
    if len(points) < 3:
        raise FitError(f"a power-law fit needs at least 3 points, got {len(points)}")
    sizes = np.array([n for n, _ in points], dtype=np.float64)
    values = np.array([v for _, v in points], dtype=np.float64)
    if np.any(values <= 0) or not np.all(np.isfinite(values)):
        raise FitError("power-law fits need finite, strictly positive values")
    if np.any(sizes <= 0) or len(np.unique(sizes)) < 3:
        raise FitError("power-law fits need at least 3 distinct positive sizes")
    x, y = np.log(sizes), np.log(values)
    result = linregress(x, y)
    residual = float(np.sqrt(np.mean((y - (result.intercept + result.slope * x)) ** 2)))
    return ScalingFit(
        quantity=quantity,
        exponent=float(result.slope),
        uncertainty=max(
            float(result.stderr), _UNCERTAINTY_FLOOR * max(1.0, abs(result.slope))
        ),
        residual=residual,
        size_range=(int(sizes[0]), int(sizes[-1])),
    )


def fit_delta(peaks: typing.Sequence["PeakResult"], h_c: float = H_C) -> ScalingFit:
    """Exponent delta of h_c - h_max ~ N^-delta, reported positive."""
    too_far = [p for p in peaks if p.h_max >= h_c]
    if too_far:
        listing = ", ".join(f"N={p.N}: h_max={p.h_max:.8g}" for p in too_far)
        raise FitError(f"every h_max must lie below h_c = {h_c}; got {listing}")
    fit = fit_power_law(((p.N, h_c - p.h_max) for p in peaks), Quantity.DELTA)
    return ScalingFit(
        quantity=Quantity.DELTA,
        exponent=-fit.exponent,
        uncertainty=fit.uncertainty,
        residual=fit.residual,
        size_range=fit.size_range,
    )


@dataclass(frozen=True)
class AlphaReport:
    phase: Phase
    ratio: float
    expected: float
    uncertainty: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return abs(self.ratio - self.expected) <= self.tolerance

    def __json__(self):
        """Return self in a JSON-serialisable format."""
        return {
            "phase": self.phase.value,
            "ratio": self.ratio,
            "expected": self.expected,
            "uncertainty": self.uncertainty,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def check_alpha_relation(mu: ScalingFit, nu: ScalingFit, phase: Phase) -> AlphaReport:
    """Compare mu/nu with alpha = 2 (h > 1), or (mu - 1)/nu with alpha = 1/2 (h < 1).

    Below h = 1 the intensive quantity is chi_F / N, whose peak grows as N^(mu-1).
    """
    phase = Phase(phase)
    growth = mu.exponent if phase == Phase.SYMMETRIC else mu.exponent - 1
    ratio = growth / nu.exponent
    relative = math.hypot(
        mu.uncertainty / growth if growth else math.inf,
        nu.uncertainty / nu.exponent,
    )
    return AlphaReport(
        phase=phase,
        ratio=ratio,
        expected=alpha_exponent(phase),
        uncertainty=abs(ratio) * relative if growth else math.inf,
        tolerance=ALPHA_TOLERANCE[phase.value],
    )
