from src.commands.common import locate_peaks, metadata, synthetic_oracle
from src.commands.peak import critical_field
from src.enums import Command, Phase, Quantity
from src.fidelity import FidelityCurve, sweep_curve
from src.output.config import RunConfig
from src.output.table import ResultTable
from src.scaling import (
    CollapseResult,
    PeakResult,
    check_alpha_relation,
    collapse_window,
    estimate_nu_collapse,
    fit_power_law,
)

CURVE_COLUMNS = ("gamma", "N", "h", "chi", "x", "y", "nu", "h_max", "chi_max")
SUMMARY_COLUMNS = (
    "gamma",
    "nu",
    "nu_uncertainty",
    "nu_half",
    "objective",
    "mu",
    "mu_uncertainty",
    "alpha_symmetric",
    "alpha_symmetric_uncertainty",
    "alpha_symmetric_passed",
    "alpha_broken",
    "alpha_broken_uncertainty",
    "alpha_broken_passed",
    "h_c",
)


def _curves(peaks: list[PeakResult], gamma: float, config: RunConfig) -> list[FidelityCurve]:
    section = config.collapse
    curves = []
    for p in peaks:
        grid = collapse_window(
            p.h_max, p.N, section.window_exponent, section.half_width, section.samples
        )
        if section.synthetic is not None:
            curves.append(synthetic_oracle(section.synthetic).curve(p.N, grid, gamma))
        else:
            curves.append(
                sweep_curve(
                    p.N, gamma, grid, config.jobs, config.lam, config.tol, config.dense_cap
                )
            )
    return curves


def _curve_rows(table: ResultTable, gamma: float, result: CollapseResult, peaks):
    by_size = {p.N: p for p in peaks}
    for curve in result.curves:
        peak = by_size[curve.N]
        for h, chi, x, y in zip(curve.h, curve.chi, curve.x, curve.y):
            table.append(
                gamma=gamma,
                N=curve.N,
                h=h,
                chi=chi,
                x=x,
                y=y,
                nu=result.nu,
                h_max=peak.h_max,
                chi_max=peak.chi_max,
            )


def run(config: RunConfig) -> list[ResultTable]:
    """Rescaled curves per anisotropy, and a summary with nu, mu and both alpha checks."""
    section = config.collapse
    objective_note = (
        f"mean pairwise squared deviation of y, {section.grid_points}-point uniform grid "
        "over the shared x-range, linear interpolation"
    )
    convention_note = (
        "x = N^nu (h - h_max); nu_half is the exponent when x is written N^(2 nu) (h - h_max)"
    )
    curves_table = ResultTable(
        "collapse",
        CURVE_COLUMNS,
        metadata=metadata(Command.COLLAPSE, config, collapse_objective=objective_note),
    )
    summary = ResultTable(
        "collapse_summary",
        SUMMARY_COLUMNS,
        metadata=metadata(
            Command.COLLAPSE,
            config,
            collapse_objective=objective_note,
            nu_convention=convention_note,
        ),
    )
    for gamma in section.gammas:
        peaks = locate_peaks(section, gamma, config)
        result = estimate_nu_collapse(
            _curves(peaks, gamma, config), peaks, section.nu_scan, section.grid_points
        )
        _curve_rows(curves_table, gamma, result, peaks)

        mu = fit_power_law(((p.N, p.chi_max) for p in peaks), Quantity.MU)
        nu = result.as_fit()
        symmetric = check_alpha_relation(mu, nu, Phase.SYMMETRIC)
        broken = check_alpha_relation(mu, nu, Phase.BROKEN)
        summary.append(
            gamma=gamma,
            nu=result.nu,
            nu_uncertainty=result.uncertainty,
            nu_half=result.nu / 2,
            objective=result.objective,
            mu=mu.exponent,
            mu_uncertainty=mu.uncertainty,
            alpha_symmetric=symmetric.ratio,
            alpha_symmetric_uncertainty=symmetric.uncertainty,
            alpha_symmetric_passed=symmetric.passed,
            alpha_broken=broken.ratio,
            alpha_broken_uncertainty=broken.uncertainty,
            alpha_broken_passed=broken.passed,
            h_c=critical_field(section),
        )
    return [curves_table, summary]
