from src.fidelity.curve import CurveSample, FidelityCurve, method_for, sweep_curve
from src.fidelity.susceptibility import (
    ChiEstimate,
    chi,
    chi_overlap,
    chi_overlap_family,
    chi_perturbative,
    convergence_order,
    default_delta,
    fidelity_overlap,
    overlap_estimate,
    perturbative_sum,
)

__all__ = [
    "ChiEstimate",
    "CurveSample",
    "FidelityCurve",
    "chi",
    "chi_overlap",
    "chi_overlap_family",
    "chi_perturbative",
    "convergence_order",
    "default_delta",
    "fidelity_overlap",
    "method_for",
    "overlap_estimate",
    "perturbative_sum",
    "sweep_curve",
]
