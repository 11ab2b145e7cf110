"""Self-test suite: each check measures a discrepancy and compares it to a threshold.

Failures are data, reported as rows; the caller turns any failed row into a
nonzero exit status. Every check that builds a Hamiltonian accepts the
builder as an argument, so a deliberately broken one can be passed in.
"""

import itertools
import typing
from dataclasses import dataclass
from functools import partial

import numpy as np
import scipy.linalg

from src.commands.common import metadata
from src.enums import Command, SolverMethod
from src.fidelity import chi_overlap, chi_perturbative
from src.model import BandedSpinMatrix, DickeBasis, ModelParams, build_hamiltonian
from src.model.pauli import dicke_embedding, pauli_lowest
from src.output.config import RunConfig, VerifySection
from src.output.table import ResultTable
from src.pool import run_ordered
from src.solver import ground_state, sector_ground_state

type Builder = typing.Callable[[ModelParams], BandedSpinMatrix]

COLUMNS = ("check", "N", "gamma", "h", "measured", "threshold", "passed")

# machine-precision checks, relative to max(1, ||H||_inf)
_EXACT = 1e-12
# Pauli levels closer than this many energy_atol count as one degenerate level
_DOUBLET_FACTOR = 1e3


@dataclass(frozen=True)
class CheckResult:
    check: str
    N: int
    gamma: float
    h: float
    measured: float
    threshold: float

    @property
    def passed(self) -> bool:
        return bool(self.measured <= self.threshold)

    def __json__(self):
        """Return self in a JSON-serialisable format."""
        return {
            "check": self.check,
            "N": self.N,
            "gamma": self.gamma,
            "h": self.h,
            "measured": self.measured,
            "threshold": self.threshold,
            "passed": self.passed,
        }


def _result(check: str, params: ModelParams, measured: float, threshold: float):
    return CheckResult(check, params.N, params.gamma, params.h, float(measured), threshold)


def _scale(M: BandedSpinMatrix) -> float:
    return max(1.0, M.norm_inf())


def check_matvec(
    params: ModelParams, seed: int = 0, build: Builder = build_hamiltonian
) -> CheckResult:
    """Banded product against the dense matrix on a random vector."""
    M = build(params)
    v = np.random.default_rng([seed, params.N]).standard_normal(M.dimension)
    error = np.max(np.abs(M.to_dense() @ v - M.matvec(v))) / (_scale(M) * np.max(np.abs(v)))
    return _result("matvec", params, error, _EXACT)


def check_dense_energy(
    params: ModelParams, tol: float, build: Builder = build_hamiltonian
) -> CheckResult:
    M = build(params)
    dense = scipy.linalg.eigvalsh(M.to_dense(), subset_by_index=[0, 0])[0]
    error = abs(ground_state(M, tol).energy - dense) / _scale(M)
    return _result("dense_energy", params, error, 1e3 * tol)


def check_sector_split(
    params: ModelParams, build: Builder = build_hamiltonian
) -> CheckResult:
    """Parity blocks reproduce the dense matrix and nothing couples them."""
    M = build(params)
    dense = M.to_dense()
    even, odd = M.split_sectors()
    error = 0.0
    if even.dimension and odd.dimension:
        error = np.max(np.abs(dense[np.ix_(even.indices, odd.indices)]))
    for sector in (even, odd):
        if sector.dimension:
            block = dense[np.ix_(sector.indices, sector.indices)]
            error = max(error, np.max(np.abs(sector.to_dense() - block)))
    return _result("sector_split", params, error / _scale(M), 0.0)


def check_pauli(
    params: ModelParams,
    energy_atol: float,
    vector_atol: float,
    tol: float,
    build: Builder = build_hamiltonian,
) -> list[CheckResult]:
    """Ground energy and ground vector against the 2^N spin-1/2 Hamiltonian.

    The vector is compared by its weight inside the lowest Pauli level (two
    states if they are degenerate). A sign error in the off-diagonal band is
    a similarity transform of a tridiagonal sector and leaves the energies
    unchanged, so only the vector comparison catches it.
    """
    M = build(params)
    pair = ground_state(M, tol)
    energies, vectors = pauli_lowest(params, k=2)
    level = vectors[:, np.abs(energies - energies[0]) <= _DOUBLET_FACTOR * energy_atol]
    embedded = dicke_embedding(params.N) @ pair.vector
    weight = np.linalg.norm(level.T @ embedded)
    return [
        _result("pauli_energy", params, abs(pair.energy - energies[0]), energy_atol),
        _result("pauli_vector", params, abs(1 - weight), vector_atol),
    ]


def check_cross_method(
    params: ModelParams, rtol: float, tol: float, dense_cap: int
) -> CheckResult:
    """Perturbative sum against the Richardson overlap estimate."""
    exact = chi_perturbative(params, tol, dense_cap).value
    overlap = chi_overlap(params, tol=tol).value
    return _result("perturbative_vs_overlap", params, abs(overlap - exact) / exact, rtol)


def check_krylov(
    params: ModelParams, tol: float, build: Builder = build_hamiltonian
) -> CheckResult:
    """Krylov and tridiagonal sector ground states agree in energy and vector."""
    M = build(params)
    error = 0.0
    for sector in M.split_sectors():
        if sector.dimension < 2:
            continue
        direct = sector_ground_state(sector, tol, SolverMethod.TRIDIAGONAL)
        krylov = sector_ground_state(sector, tol, SolverMethod.KRYLOV)
        error = max(
            error,
            abs(direct.energy - krylov.energy) / _scale(M),
            1 - abs(direct.vector @ krylov.vector),
        )
    return _result("krylov_vs_direct", params, error, 1e3 * tol)


def check_reflection(
    params: ModelParams, build: Builder = build_hamiltonian
) -> CheckResult:
    """m -> -m maps H(h) onto H(-h): reversed diagonal gains 4 h m, the band is symmetric."""
    M = build(params)
    m = DickeBasis(params.N).m_values
    error = np.max(np.abs(M.diag[::-1] - (M.diag + 4 * params.h * m)))
    if M.offdiag2.size:
        error = max(error, np.max(np.abs(M.offdiag2[::-1] - M.offdiag2)))
    return _result("h_reflection", params, error / _scale(M), _EXACT)


def _point_checks(
    params: ModelParams,
    section: VerifySection,
    config: RunConfig,
    build: Builder,
) -> list[CheckResult]:
    results = [
        check_matvec(params, config.seed, build),
        check_dense_energy(params, config.tol, build),
        check_sector_split(params, build),
        check_reflection(params, build),
    ]
    if params.N in section.pauli_sizes:
        results.extend(
            check_pauli(params, section.energy_atol, section.vector_atol, config.tol, build)
        )
    if params.N in section.sizes and params.N + 1 <= config.dense_cap:
        results.append(check_cross_method(params, section.chi_rtol, config.tol, config.dense_cap))
    if params.N == section.krylov_size:
        results.append(check_krylov(params, config.tol, build))
    return results


def run_suite(config: RunConfig, build: Builder = build_hamiltonian) -> list[CheckResult]:
    """All checks over sizes x gammas x fields; build must pickle when jobs > 1."""
    section = config.verify
    sizes = sorted(set(section.sizes) | set(section.pauli_sizes) | {section.krylov_size})
    points = [
        ModelParams(N, gamma, h, config.lam)
        for N, gamma, h in itertools.product(sizes, section.gammas, section.fields)
    ]
    task = partial(_point_checks, section=section, config=config, build=build)
    batches = run_ordered(task, points, config.jobs, desc="verify")
    return [result for batch in batches for result in batch]


def run(config: RunConfig, build: Builder = build_hamiltonian) -> list[ResultTable]:
    table = ResultTable("verify", COLUMNS, metadata=metadata(Command.VERIFY, config))
    for result in run_suite(config, build):
        table.append(**result.__json__())
    return [table]


def failures(table: ResultTable) -> int:
    return sum(1 for passed in table.column("passed") if not passed)
