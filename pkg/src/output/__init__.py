from src.output.config import (
    AnalyticSection,
    CollapseSection,
    HGrid,
    PeakSection,
    RunConfig,
    ScaleSection,
    SweepSection,
    SyntheticSection,
    VerifySection,
    load_config,
    merge,
)
from src.output.table import ResultTable, read_csv, read_metadata

__all__ = [
    "AnalyticSection",
    "CollapseSection",
    "HGrid",
    "PeakSection",
    "ResultTable",
    "RunConfig",
    "ScaleSection",
    "SweepSection",
    "SyntheticSection",
    "VerifySection",
    "load_config",
    "merge",
    "read_csv",
    "read_metadata",
]
