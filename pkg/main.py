# /// script
# dependencies = [
#  "numpy",
#  "scipy",
#  "pandas",
#  "matplotlib",
#  "tqdm",
# ]
# ///

import argparse
import sys

from src.commands import run_command, write_tables
from src.commands.verify import failures
from src.enums import Command, ExitCode
from src.exceptions import ConfigError, LMGError
from src.output import load_config
from src.settings import TOOL_NAME, TOOL_VERSION
from src.support import preset_names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description="Fidelity susceptibility of the LMG model: exact diagonalization, "
        "Holstein-Primakoff predictions and finite-size scaling.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {TOOL_VERSION}")
    commands = parser.add_subparsers(dest="command", required=True)

    for command in Command:
        sub = commands.add_parser(command.value)
        source = sub.add_mutually_exclusive_group()
        source.add_argument("--config", help="JSON run configuration (// comments allowed)")
        source.add_argument("--preset", choices=preset_names(), help="shipped configuration")
        sub.add_argument("--out", help="output directory")
        sub.add_argument("--jobs", type=int, help="worker processes")
        sub.add_argument(
            "--svg", action="store_true", default=None, help="also draw an SVG figure"
        )
        if command == Command.SWEEP:
            sub.add_argument(
                "--inset",
                action="store_true",
                default=None,
                help="add the chi - leading-term and subleading columns",
            )
    return parser


def overrides_from(args: argparse.Namespace) -> dict:
    overrides = {"out": args.out, "jobs": args.jobs, "svg": args.svg}
    if getattr(args, "inset", None):
        overrides["sweep"] = {"inset": True}
    return overrides


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    command = Command(args.command)
    try:
        config = load_config(args.config, args.preset, overrides_from(args))
    except ConfigError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return ExitCode.INVALID_CONFIG

    try:
        tables = run_command(command, config)
        paths = write_tables(command, tables, config)
    except ConfigError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return ExitCode.INVALID_CONFIG
    except LMGError as exc:
        print(f"computation refused: {exc}", file=sys.stderr)
        return ExitCode.REFUSED
    except OSError as exc:
        print(f"cannot write results: {exc}", file=sys.stderr)
        return ExitCode.REFUSED

    for path in paths:
        print(f"Wrote {path}")

    if command == Command.VERIFY:
        failed = failures(tables[0])
        if failed:
            print(f"{failed} check(s) failed", file=sys.stderr)
            return ExitCode.VERIFY_FAILED
    return ExitCode.SUCCESS


if __name__ == "__main__":
    sys.exit(main())
