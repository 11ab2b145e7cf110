import warnings
from functools import partial

from src.analytic import predict
from src.commands.common import metadata, require_unit_coupling
from src.enums import Command, Phase
from src.exceptions import AnalyticWarning, LMGError
from src.fidelity import chi
from src.model import ModelParams, build_hamiltonian
from src.output.config import RunConfig
from src.output.table import ResultTable
from src.pool import run_ordered
from src.solver import gap, ground_state

COLUMNS = (
    "gamma",
    "N",
    "h",
    "chi_ed",
    "chi_hp_leading",
    "chi_hp_subleading",
    "gap_ed",
    "gap_hp",
    "e0_ed",
    "e0_hp",
    "chi_relative_error",
    "gap_relative_error",
    "e0_relative_error",
    "flag",
)


def _relative(measured: float | None, predicted: float | None) -> float | None:
    if measured is None or predicted is None or predicted == 0:
        return None
    return abs(measured - predicted) / abs(predicted)


def _row(
    h: float, N: int, gamma: float, match_hamiltonian: bool, tol: float, dense_cap: int
) -> dict:
    params = ModelParams(N, gamma, h)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AnalyticWarning)
        hp = predict(gamma, h, N, match_hamiltonian)
    flag = "singular" if hp.chi_f is None else ""

    M = build_hamiltonian(params)
    chi_ed = None
    try:
        chi_ed = chi(params, tol, dense_cap).value
    except LMGError as exc:
        flag = f"error: {exc}"
    # below h = 1 the harmonic mode sits above the tunnelling doublet
    gap_ed = gap(M, within_sector=hp.phase == Phase.BROKEN, tol=tol)
    e0_ed = ground_state(M, tol).energy
    return dict(
        gamma=gamma,
        N=N,
        h=h,
        chi_ed=chi_ed,
        chi_hp_leading=hp.chi_f,
        chi_hp_subleading=hp.chi_subleading,
        gap_ed=gap_ed,
        gap_hp=hp.gap,
        e0_ed=e0_ed,
        e0_hp=hp.ground_energy,
        chi_relative_error=_relative(chi_ed, hp.chi_f),
        gap_relative_error=_relative(gap_ed, hp.gap),
        e0_relative_error=_relative(e0_ed, hp.ground_energy),
        flag=flag,
    )


def run(config: RunConfig) -> list[ResultTable]:
    section = config.analytic
    require_unit_coupling(config, "the analytic comparison")
    table = ResultTable("analytic", COLUMNS, metadata=metadata(Command.ANALYTIC, config))
    grid = section.h.grid()
    for gamma in section.gammas:
        for N in section.sizes:
            task = partial(
                _row,
                N=N,
                gamma=gamma,
                match_hamiltonian=section.match_hamiltonian,
                tol=config.tol,
                dense_cap=config.dense_cap,
            )
            for row in run_ordered(task, grid, config.jobs, desc=f"analytic N={N}"):
                table.append(**row)
    return [table]
