from dataclasses import replace
from functools import partial

import numpy as np

from src.enums import Command
from src.exceptions import ConfigError
from src.output.config import PeakSection, RunConfig, SyntheticSection
from src.pool import run_ordered
from src.scaling import PeakResult, SyntheticChi, default_bracket, locate_peak


def metadata(command: Command, config: RunConfig, **extra) -> dict[str, str]:
    return {"command": command.value, "config_hash": config.config_hash, **extra}


def require_unit_coupling(config: RunConfig, what: str):
    if config.lam != 1:
        raise ConfigError(f"{what} uses closed forms written for lam = 1, got lam = {config.lam}")


def synthetic_oracle(section: SyntheticSection) -> SyntheticChi:
    return SyntheticChi(
        mu=section.mu,
        nu=section.nu,
        delta=section.delta,
        amplitude=section.amplitude,
        h_c=section.h_c,
    )


def _peak_task(
    N: int, gamma: float, section: PeakSection, lam: float, tol: float, dense_cap: int
) -> PeakResult:
    chi_fn, bracket = None, section.bracket
    if section.synthetic is not None:
        chi_fn = synthetic_oracle(section.synthetic).for_size(N)
        if bracket is None:
            lo, hi = default_bracket(N)
            shift = section.synthetic.h_c - 1
            bracket = (lo + shift, hi + shift)
    return locate_peak(
        N,
        gamma,
        bracket=bracket,
        tol_h=section.tol_h,
        chi_fn=chi_fn,
        budget=section.budget,
        lam=lam,
        tol=tol,
        dense_cap=dense_cap,
    )


def locate_peaks(
    section: PeakSection, gamma: float, config: RunConfig
) -> list[PeakResult]:
    """One peak per size, in the order of section.sizes."""
    task = partial(
        _peak_task,
        gamma=gamma,
        section=section,
        lam=config.lam,
        tol=config.tol,
        dense_cap=config.dense_cap,
    )
    return run_ordered(
        task, list(section.sizes), config.jobs, desc=f"peaks gamma={gamma:g}"
    )


def add_noise(
    peaks: list[PeakResult], noise: float, rng: np.random.Generator
) -> list[PeakResult]:
    """Multiplicative Gaussian noise on chi_max, drawn in size order."""
    if noise == 0:
        return peaks
    return [replace(p, chi_max=p.chi_max * (1 + noise * rng.standard_normal())) for p in peaks]
