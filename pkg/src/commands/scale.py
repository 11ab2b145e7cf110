import numpy as np

from src.commands.common import add_noise, locate_peaks, metadata
from src.commands.peak import critical_field, peak_table
from src.enums import Command, Quantity
from src.output.config import RunConfig
from src.output.table import ResultTable
from src.scaling import PeakResult, ScalingFit, fit_delta, fit_power_law

COLUMNS = (
    "gamma",
    "N_min",
    "N_max",
    "n_sizes",
    "mu",
    "mu_uncertainty",
    "mu_residual",
    "delta",
    "delta_uncertainty",
    "delta_residual",
)


def fit_window(
    peaks: list[PeakResult], window: tuple[int, int], h_c: float
) -> tuple[ScalingFit, ScalingFit, int]:
    inside = [p for p in peaks if window[0] <= p.N <= window[1]]
    mu = fit_power_law(((p.N, p.chi_max) for p in inside), Quantity.MU)
    return mu, fit_delta(inside, h_c), len(inside)


def run(config: RunConfig) -> list[ResultTable]:
    """mu and delta per anisotropy and size window, plus the peaks they came from."""
    section = config.scale
    h_c = critical_field(section)
    noise = section.synthetic.noise if section.synthetic is not None else 0.0
    rng = np.random.default_rng(config.seed)

    table = ResultTable("scale", COLUMNS, metadata=metadata(Command.SCALE, config))
    all_peaks = []
    for gamma in section.gammas:
        peaks = add_noise(locate_peaks(section, gamma, config), noise, rng)
        all_peaks.extend(peaks)
        for window in section.windows:
            mu, delta, count = fit_window(peaks, window, h_c)
            table.append(
                gamma=gamma,
                N_min=window[0],
                N_max=window[1],
                n_sizes=count,
                mu=mu.exponent,
                mu_uncertainty=mu.uncertainty,
                mu_residual=mu.residual,
                delta=delta.exponent,
                delta_uncertainty=delta.uncertainty,
                delta_residual=delta.residual,
            )
    peaks_table = peak_table("scale_peaks", all_peaks, config, Command.SCALE, h_c)
    return [table, peaks_table]
