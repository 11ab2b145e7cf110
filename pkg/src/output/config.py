"""Run configuration: built-in defaults, overridden by a JSON file, overridden by flags."""

import os
import typing
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from src import utils
from src.exceptions import ConfigError
from src.model.pauli import PAULI_MAX_SPINS
from src.settings import (
    COLLAPSE_GRID_POINTS,
    COLLAPSE_HALF_WIDTH,
    COLLAPSE_SAMPLES,
    COLLAPSE_WINDOW_EXPONENT,
    DEFAULT_TOL,
    DENSE_CAP,
    DESK_SIZES,
    NU_SCAN,
    PEAK_BUDGET,
    PEAK_SAMPLES,
    PEAK_TOL_H,
    TABLE_GAMMAS,
    TABLE_WINDOWS,
)
from src.support import load_json_file, load_preset

# never change a number, so they stay out of the config hash
_UNHASHED = ("out", "jobs")


def _section(cls, data, name: str):
    if data is None:
        return cls()
    if isinstance(data, cls):
        return data
    if not isinstance(data, dict):
        raise ConfigError(f"'{name}' must be an object, got {type(data).__name__}")
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown key(s) in '{name}': {', '.join(unknown)}")
    try:
        return cls(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid '{name}' section: {exc}") from exc


def _sizes(values, name: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(n) for n in values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"'{name}' must be a list of integers") from exc
    if not sizes or any(n < 1 for n in sizes):
        raise ConfigError(f"'{name}' must list positive system sizes")
    if any(n != v for n, v in zip(sizes, values)):
        raise ConfigError(f"'{name}' must list integers, got {list(values)}")
    return sizes


def _gammas(values, name: str) -> tuple[float, ...]:
    try:
        gammas = tuple(float(g) for g in values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"'{name}' must be a list of numbers") from exc
    if not gammas or any(not abs(g) < 1 for g in gammas):
        raise ConfigError(f"'{name}' must list anisotropies with |gamma| < 1")
    return gammas


@dataclass
class HGrid:
    """Uniform field grid; values, if given, replace start/stop/points."""

    start: float = 0.05
    stop: float = 2.0
    points: int = 80
    values: list[float] | None = None

    def __post_init__(self):
        if self.values is not None:
            self.values = [float(h) for h in self.values]
            if not self.values or any(b <= a for a, b in zip(self.values, self.values[1:])):
                raise ConfigError("h values must be a non-empty ascending list")
            if self.values[0] < 0:
                raise ConfigError("h values must be >= 0")
            return
        if not 0 <= self.start < self.stop:
            raise ConfigError("h grid must satisfy 0 <= start < stop")
        if self.points < 2:
            raise ConfigError("h grid needs at least 2 points")

    def grid(self) -> list[float]:
        if self.values is not None:
            return list(self.values)
        return np.linspace(self.start, self.stop, self.points).tolist()


@dataclass
class SyntheticSection:
    """Known power-law chi_F used instead of the model (plumbing runs)."""

    mu: float = 4 / 3
    nu: float = 2 / 3
    delta: float = 2 / 3
    amplitude: float = 1.0
    h_c: float = 1.0
    noise: float = 0.0

    def __post_init__(self):
        if not (self.nu > 0 and self.delta > 0 and self.amplitude > 0):
            raise ConfigError("synthetic nu, delta and amplitude must be > 0")
        if self.noise < 0:
            raise ConfigError("synthetic noise must be >= 0")


@dataclass
class SweepSection:
    sizes: tuple[int, ...] = (64,)
    gammas: tuple[float, ...] = (0.5,)
    h: HGrid = field(default_factory=HGrid)
    inset: bool = False

    def __post_init__(self):
        self.sizes = _sizes(self.sizes, "sweep.sizes")
        self.gammas = _gammas(self.gammas, "sweep.gammas")
        self.h = _section(HGrid, self.h, "sweep.h")


@dataclass
class PeakSection:
    sizes: tuple[int, ...] = tuple(DESK_SIZES)
    gammas: tuple[float, ...] = (0.5,)
    bracket: tuple[float, float] | None = None
    tol_h: float = PEAK_TOL_H
    budget: int = PEAK_BUDGET
    synthetic: SyntheticSection | None = None

    def __post_init__(self):
        self.sizes = _sizes(self.sizes, "peak.sizes")
        self.gammas = _gammas(self.gammas, "peak.gammas")
        if self.bracket is not None:
            if len(self.bracket) != 2 or not 0 < self.bracket[0] < self.bracket[1]:
                raise ConfigError("peak.bracket must be [lo, hi] with 0 < lo < hi")
            self.bracket = (float(self.bracket[0]), float(self.bracket[1]))
        if not self.tol_h > 0:
            raise ConfigError("peak.tol_h must be > 0")
        if self.budget <= PEAK_SAMPLES:
            raise ConfigError(f"peak.budget must exceed {PEAK_SAMPLES}")
        if self.synthetic is not None:
            self.synthetic = _section(SyntheticSection, self.synthetic, "synthetic")


@dataclass
class ScaleSection(PeakSection):
    gammas: tuple[float, ...] = tuple(TABLE_GAMMAS)
    windows: tuple[tuple[int, int], ...] = tuple(TABLE_WINDOWS)

    def __post_init__(self):
        super().__post_init__()
        if len(self.sizes) < 3:
            raise ConfigError("scale.sizes needs at least 3 sizes")
        windows = []
        for window in self.windows:
            if len(window) != 2 or not window[0] < window[1]:
                raise ConfigError(f"scale window must be [N_min, N_max], got {window}")
            inside = [n for n in self.sizes if window[0] <= n <= window[1]]
            if len(inside) < 3:
                raise ConfigError(f"scale window {list(window)} holds fewer than 3 sizes")
            windows.append((int(window[0]), int(window[1])))
        self.windows = tuple(windows)


@dataclass
class CollapseSection(PeakSection):
    sizes: tuple[int, ...] = tuple(2**n for n in range(12, 17))
    gammas: tuple[float, ...] = (0.5, 0.0, -0.5)
    window_exponent: float = COLLAPSE_WINDOW_EXPONENT
    half_width: float = COLLAPSE_HALF_WIDTH
    samples: int = COLLAPSE_SAMPLES
    grid_points: int = COLLAPSE_GRID_POINTS
    nu_scan: tuple[float, float, float] = NU_SCAN

    def __post_init__(self):
        super().__post_init__()
        if len(set(self.sizes)) < 3:
            raise ConfigError("collapse.sizes needs at least 3 distinct sizes")
        if self.samples < 3 or self.grid_points < 2 or not self.half_width > 0:
            raise ConfigError("collapse sampling parameters out of range")
        if len(self.nu_scan) != 3:
            raise ConfigError("collapse.nu_scan must be [start, stop, step]")
        start, stop, step = (float(v) for v in self.nu_scan)
        if not 0 < start < stop or not 0 < step < stop - start:
            raise ConfigError("collapse.nu_scan must satisfy 0 < start < stop, 0 < step")
        self.nu_scan = (start, stop, step)


@dataclass
class AnalyticSection:
    sizes: tuple[int, ...] = (2**8, 2**10, 2**12)
    gammas: tuple[float, ...] = (0.5,)
    h: HGrid = field(default_factory=lambda: HGrid(values=[0.5, 1.0, 1.5, 2.0]))
    match_hamiltonian: bool = True

    def __post_init__(self):
        self.sizes = _sizes(self.sizes, "analytic.sizes")
        self.gammas = _gammas(self.gammas, "analytic.gammas")
        self.h = _section(HGrid, self.h, "analytic.h")


@dataclass
class VerifySection:
    sizes: tuple[int, ...] = (4, 8, 16, 64, 256)
    gammas: tuple[float, ...] = (-0.5, 0.0, 0.5)
    fields: tuple[float, ...] = (0.2, 0.5, 0.8, 1.5, 2.0)
    pauli_sizes: tuple[int, ...] = (2, 3, 4, 8, PAULI_MAX_SPINS)
    krylov_size: int = 256
    chi_rtol: float = 1e-6
    energy_atol: float = 1e-10
    vector_atol: float = 1e-8

    def __post_init__(self):
        self.sizes = _sizes(self.sizes, "verify.sizes")
        self.gammas = _gammas(self.gammas, "verify.gammas")
        self.fields = tuple(float(h) for h in self.fields)
        if any(h < 0 for h in self.fields):
            raise ConfigError("verify.fields must be >= 0")
        self.pauli_sizes = _sizes(self.pauli_sizes, "verify.pauli_sizes")
        if max(self.pauli_sizes) > PAULI_MAX_SPINS:
            raise ConfigError(f"verify.pauli_sizes must not exceed {PAULI_MAX_SPINS}")
        if self.krylov_size < 2:
            raise ConfigError("verify.krylov_size must be >= 2")
        if min(self.chi_rtol, self.energy_atol, self.vector_atol) <= 0:
            raise ConfigError("verify tolerances must be > 0")


@dataclass
class RunConfig:
    out: str = "results"
    jobs: int = 1
    svg: bool = False
    seed: int = 0
    tol: float = DEFAULT_TOL
    dense_cap: int = DENSE_CAP
    lam: float = 1.0
    sweep: SweepSection = field(default_factory=SweepSection)
    peak: PeakSection = field(default_factory=PeakSection)
    scale: ScaleSection = field(default_factory=ScaleSection)
    collapse: CollapseSection = field(default_factory=CollapseSection)
    analytic: AnalyticSection = field(default_factory=AnalyticSection)
    verify: VerifySection = field(default_factory=VerifySection)

    def __post_init__(self):
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        if not 0 < self.tol < 1:
            raise ConfigError(f"tol must lie in (0, 1), got {self.tol}")
        if self.dense_cap < 1:
            raise ConfigError("dense_cap must be >= 1")
        if not np.isfinite(self.lam) or self.lam == 0:
            raise ConfigError("lam must be finite and nonzero")
        self.sweep = _section(SweepSection, self.sweep, "sweep")
        self.peak = _section(PeakSection, self.peak, "peak")
        self.scale = _section(ScaleSection, self.scale, "scale")
        self.collapse = _section(CollapseSection, self.collapse, "collapse")
        self.analytic = _section(AnalyticSection, self.analytic, "analytic")
        self.verify = _section(VerifySection, self.verify, "verify")

    def __json__(self):
        """Return self in a JSON-serialisable format."""
        return asdict(self)

    @property
    def config_hash(self) -> str:
        data = self.__json__()
        for key in _UNHASHED:
            del data[key]
        return utils.content_hash(data)

    @classmethod
    def from_json(cls, data: dict[str, typing.Any]) -> "RunConfig":
        return _section(cls, data, "config")


def merge(base: dict, overrides: dict) -> dict:
    """Nested dict update; values in overrides win, None means 'not given'."""
    merged = dict(base)
    for key, value in overrides.items():
        if value is None:
            continue
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(
    path: str | os.PathLike | None = None,
    preset: str | None = None,
    overrides: dict | None = None,
) -> RunConfig:
    if path is not None and preset is not None:
        raise ConfigError("give either a config file or a preset, not both")
    data: typing.Any = {}
    if path is not None:
        data = load_json_file(path)
    elif preset is not None:
        data = load_preset(preset)
    if not isinstance(data, dict):
        raise ConfigError("a config file must hold a JSON object")
    return RunConfig.from_json(merge(data, overrides or {}))
