"""CSV tables with a '#'-prefixed metadata header.

Numbers are written with 16 significant digits and rows keep insertion
order, so a table built from the same configuration is byte-identical
apart from the 'created' header line.
"""

import datetime
import enum
import io
import os
import typing
from dataclasses import dataclass, field
from pathlib import Path

import pandas as pd

from src.exceptions import InvalidParametersError
from src.settings import CSV_FLOAT_FORMAT, TOOL_NAME, TOOL_VERSION

_COMMENT = "#"
_CREATED = "created"


def _plain(value: typing.Any) -> typing.Any:
    if isinstance(value, enum.Enum):
        return value.value
    return value


@dataclass
class ResultTable:
    name: str
    columns: tuple[str, ...]
    rows: list[dict[str, typing.Any]] = field(default_factory=list)
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self.columns = tuple(self.columns)
        if len(set(self.columns)) != len(self.columns):
            raise InvalidParametersError(f"duplicate column names in {self.columns}")

    def append(self, **values):
        unknown = set(values) - set(self.columns)
        if unknown:
            raise InvalidParametersError(
                f"table '{self.name}' has no column(s) {', '.join(sorted(unknown))}"
            )
        self.rows.append({c: _plain(values.get(c)) for c in self.columns})

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> list:
        return [row[name] for row in self.rows]

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=list(self.columns))

    def header(self, created: str | None = None) -> list[str]:
        meta = {"tool": TOOL_NAME, "version": TOOL_VERSION, **self.metadata}
        if created is not None:
            meta[_CREATED] = created
        return [f"{_COMMENT} {key}: {value}" for key, value in meta.items()]

    def to_csv_text(self, created: str | None = None) -> str:
        buffer = io.StringIO()
        buffer.write("\n".join(self.header(created)) + "\n")
        self.frame().to_csv(
            buffer,
            index=False,
            float_format=f"%{CSV_FLOAT_FORMAT}",
            na_rep="",
            lineterminator="\n",
        )
        return buffer.getvalue()

    def write_csv(self, path: str | os.PathLike, created: str | None = None) -> Path:
        """Write the table; created defaults to the current UTC time."""
        if created is None:
            created = datetime.datetime.now(datetime.UTC).isoformat(timespec="seconds")
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_csv_text(created), encoding="utf-8")
        return path


def read_metadata(path: str | os.PathLike) -> dict[str, str]:
    metadata = {}
    with open(path, "r", encoding="utf-8") as file:
        for line in file:
            if not line.startswith(_COMMENT):
                break
            key, _, value = line[len(_COMMENT) :].strip().partition(":")
            metadata[key.strip()] = value.strip()
    return metadata


def read_csv(path: str | os.PathLike) -> pd.DataFrame:
    """Data rows of a table written by ResultTable.write_csv."""
    skip = len(read_metadata(path))
    return pd.read_csv(
        path,
        skiprows=skip,
        keep_default_na=False,
        na_values=[""],
        float_precision="round_trip",
    )
