from src.commands.common import locate_peaks, metadata
from src.enums import Command
from src.output.config import PeakSection, RunConfig
from src.output.table import ResultTable
from src.scaling import PeakResult
from src.settings import H_C

COLUMNS = (
    "N",
    "gamma",
    "h_max",
    "chi_max",
    "chi_max_per_spin",
    "h_c_minus_h_max",
    "refinement_width",
    "evaluations",
)


def peak_table(
    name: str, peaks: list[PeakResult], config: RunConfig, command: Command, h_c: float
) -> ResultTable:
    table = ResultTable(name, COLUMNS, metadata=metadata(command, config))
    for p in peaks:
        table.append(
            N=p.N,
            gamma=p.gamma,
            h_max=p.h_max,
            chi_max=p.chi_max,
            chi_max_per_spin=p.chi_max / p.N,
            h_c_minus_h_max=h_c - p.h_max,
            refinement_width=p.refinement_width,
            evaluations=p.evaluations,
        )
    return table


def critical_field(section: PeakSection) -> float:
    return section.synthetic.h_c if section.synthetic is not None else H_C


def run(config: RunConfig) -> list[ResultTable]:
    section = config.peak
    peaks = [p for gamma in section.gammas for p in locate_peaks(section, gamma, config)]
    return [peak_table("peak", peaks, config, Command.PEAK, critical_field(section))]
