import os
import typing
from pathlib import Path

from src import utils
from src.exceptions import ConfigError

_REPO_ROOT = Path(__file__).resolve().parent.parent
_PRESET_FOLDER = "data/presets"


def resource_path(relative_path: str) -> Path:
    """Get absolute path to a shipped resource, independent of the working directory."""
    relative_path = relative_path.replace("/", os.sep)
    return _REPO_ROOT / relative_path


def load_json_file(path: str | os.PathLike) -> typing.Any:
    """Read a JSON file that may contain // comments."""
    try:
        with open(path, "r", encoding="utf-8") as file:
            return utils.json_loads(file.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config file '{path}': {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"config file '{path}' is not valid JSON: {exc}") from exc


def preset_names() -> list[str]:
    folder = resource_path(_PRESET_FOLDER)
    return sorted(p.stem for p in folder.glob("*.json"))


def load_preset(name: str) -> typing.Any:
    path = resource_path(f"{_PRESET_FOLDER}/{name}.json")
    if not path.exists():
        raise ConfigError(
            f"unknown preset '{name}' (available: {', '.join(preset_names())})"
        )
    return load_json_file(path)
