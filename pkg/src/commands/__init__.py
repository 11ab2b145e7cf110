import typing
from pathlib import Path

from src.commands import analytic, collapse, peak, scale, sweep, verify
from src.enums import Command
from src.output.config import RunConfig
from src.output.plots import plot_table
from src.output.table import ResultTable

COMMANDS: dict[Command, typing.Callable[[RunConfig], list[ResultTable]]] = {
    Command.SWEEP: sweep.run,
    Command.PEAK: peak.run,
    Command.SCALE: scale.run,
    Command.COLLAPSE: collapse.run,
    Command.ANALYTIC: analytic.run,
    Command.VERIFY: verify.run,
}


def run_command(command: Command, config: RunConfig) -> list[ResultTable]:
    return COMMANDS[Command(command)](config)


def write_tables(
    command: Command,
    tables: list[ResultTable],
    config: RunConfig,
    created: str | None = None,
) -> list[Path]:
    """CSV for every table in config.out, plus the SVG of the first when config.svg is set."""
    out = Path(config.out)
    paths = [table.write_csv(out / f"{table.name}.csv", created) for table in tables]
    if config.svg and command != Command.VERIFY:
        paths.append(plot_table(command, paths[0]))
    return paths


__all__ = ["COMMANDS", "run_command", "write_tables"]
