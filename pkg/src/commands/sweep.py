from src.analytic import chi_broken
from src.commands.common import metadata, require_unit_coupling
from src.enums import Command
from src.fidelity import CurveSample, method_for, sweep_curve
from src.output.config import RunConfig
from src.output.table import ResultTable

COLUMNS = (
    "N",
    "gamma",
    "h",
    "chi",
    "chi_per_spin",
    "method",
    "delta_h",
    "convergence_error",
    "flag",
)
INSET_COLUMNS = ("chi_minus_leading", "hp_subleading")


def _row(N: int, gamma: float, sample: CurveSample, dense_cap: int) -> dict:
    estimate = sample.estimate
    if estimate is None:
        return dict(N=N, gamma=gamma, h=sample.h, method=method_for(N, dense_cap), flag=sample.flag)
    return dict(
        N=N,
        gamma=gamma,
        h=sample.h,
        chi=estimate.value,
        chi_per_spin=estimate.value / N,
        method=estimate.method,
        delta_h=estimate.delta_h,
        convergence_error=estimate.convergence_error,
        flag=sample.flag,
    )


def _inset(N: int, gamma: float, sample: CurveSample) -> dict:
    """Difference to the extensive broken-phase term, next to the predicted O(1) part."""
    if sample.estimate is None or sample.h >= 1:
        return {}
    leading, subleading = chi_broken(gamma, sample.h, N)
    return dict(chi_minus_leading=sample.value - leading, hp_subleading=subleading)


def run(config: RunConfig) -> list[ResultTable]:
    section = config.sweep
    if section.inset:
        require_unit_coupling(config, "the inset columns")
    table = ResultTable(
        "sweep",
        COLUMNS + (INSET_COLUMNS if section.inset else ()),
        metadata=metadata(Command.SWEEP, config),
    )
    grid = section.h.grid()
    for N in section.sizes:
        for gamma in section.gammas:
            curve = sweep_curve(
                N, gamma, grid, config.jobs, config.lam, config.tol, config.dense_cap
            )
            for sample in curve.samples:
                row = _row(N, gamma, sample, config.dense_cap)
                if section.inset:
                    row.update(_inset(N, gamma, sample))
                table.append(**row)
    return [table]
