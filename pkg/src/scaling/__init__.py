from src.scaling.collapse import (
    CollapseResult,
    RescaledCurve,
    collapse_objective,
    collapse_window,
    estimate_nu_collapse,
    rescale,
)
from src.scaling.fits import (
    AlphaReport,
    ScalingFit,
    check_alpha_relation,
    fit_delta,
    fit_power_law,
)
from src.scaling.peak import PeakResult, default_bracket, locate_peak
from src.scaling.synthetic import SyntheticChi, synthetic_chi

__all__ = [
    "AlphaReport",
    "CollapseResult",
    "PeakResult",
    "RescaledCurve",
    "ScalingFit",
    "SyntheticChi",
    "check_alpha_relation",
    "collapse_objective",
    "collapse_window",
    "default_bracket",
    "estimate_nu_collapse",
    "fit_delta",
    "fit_power_law",
    "locate_peak",
    "rescale",
    "synthetic_chi",
]
