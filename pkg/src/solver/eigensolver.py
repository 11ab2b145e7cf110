"""Ground states, gaps and full spectra of banded LMG matrices.

Every solve runs sector by sector: after parity compaction each sector is
tridiagonal, so the direct path is LAPACK's selected-eigenpair tridiagonal
solver and the Krylov path works on the compact chain as well.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from src.enums import Parity, SolverMethod
from src.exceptions import (
    ConvergenceError,
    ConvergenceWarning,
    DenseCapExceededError,
    InvalidParametersError,
)
from src.model.banded import BandedSpinMatrix, ParitySector
from src.model.basis import DickeBasis
from src.settings import (
    DEFAULT_TOL,
    DEGENERACY_FACTOR,
    DENSE_CAP,
    KRYLOV_RESTART_FACTOR,
    Vector,
)


@dataclass(frozen=True, eq=False)
class EigenPair:
    energy: float
    vector: Vector
    parity: Parity
    residual: float
    # E_1 - E_0 of the whole matrix below the guard
    degenerate: bool = field(default=False)
    # distance to the next level of the same parity sector
    sector_gap: float = field(default=math.inf)
    guard: float = field(default=0.0)

    @property
    def sector_degenerate(self) -> bool:
        return self.sector_gap < self.guard


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Complete eigendecomposition; vectors[:, n] belongs to energies[n]."""

    energies: Vector
    vectors: np.ndarray
    parities: np.ndarray

    def __post_init__(self):
        if np.any(np.diff(self.energies) < 0):
            raise InvalidParametersError("spectrum energies must be ascending")

    def __len__(self):
        return self.energies.size


def canonical_sign(v: Vector) -> Vector:
    """Flip v so that its entry of largest magnitude is nonnegative."""
    return -v if v[np.argmax(np.abs(v))] < 0 else v


def _scale(M: BandedSpinMatrix | ParitySector) -> float:
    if isinstance(M, BandedSpinMatrix):
        return max(1.0, M.norm_inf())
    rows = np.abs(M.diag).copy()
    if M.offdiag.size:
        rows[:-1] += np.abs(M.offdiag)
        rows[1:] += np.abs(M.offdiag)
    return max(1.0, float(rows.max()))


def _guard(M, tol: float) -> float:
    return DEGENERACY_FACTOR * tol * _scale(M)


def relative_residual(M, energy: float, vector: Vector) -> float:
    """||M v - E v|| / max(1, ||M||_inf)."""
    return float(np.linalg.norm(M.matvec(vector) - energy * vector) / _scale(M))


def _tridiagonal_lowest(sector: ParitySector, k: int) -> tuple[Vector, np.ndarray]:
    if sector.dimension == 1:
        return sector.diag.copy(), np.ones((1, 1))
    return scipy.linalg.eigh_tridiagonal(
        sector.diag, sector.offdiag, select="i", select_range=(0, k - 1)
    )


def _krylov_lowest(
    sector: ParitySector, k: int, tol: float
) -> tuple[Vector, np.ndarray]:
    n = sector.dimension
    if n <= k + 1:
        # ARPACK needs k < n - 1; such chains are tiny anyway
        return scipy.linalg.eigh(sector.to_dense(), subset_by_index=(0, k - 1))
    operator = LinearOperator((n, n), matvec=sector.matvec, dtype=np.float64)
    v0 = np.ones(n) / math.sqrt(n)
    maxiter = KRYLOV_RESTART_FACTOR * math.ceil(math.sqrt(n))
    try:
        energies, vectors = eigsh(
            operator, k=k, which="SA", v0=v0, tol=tol, maxiter=maxiter
        )
    except ArpackNoConvergence as exc:
        residual = math.inf
        if len(exc.eigenvalues):
            residual = relative_residual(
                sector, exc.eigenvalues[0], exc.eigenvectors[:, 0]
            )
        raise ConvergenceError(
            f"Krylov solve of a {n}-dimensional {sector.label.as_serialised_string()} "
            f"sector did not converge in {maxiter} restarts",
            residual,
        ) from exc
    order = np.argsort(energies)
    return energies[order], vectors[:, order]


def sector_lowest(
    sector: ParitySector,
    k: int = 1,
    method: SolverMethod = SolverMethod.AUTO,
    tol: float = DEFAULT_TOL,
) -> tuple[Vector, np.ndarray]:
    """Lowest min(k, dim) eigenpairs of one sector, in the compact sector basis."""
    if tol <= 0:
        raise InvalidParametersError(f"tol must be > 0, got {tol}")
    k = min(k, sector.dimension)
    if method == SolverMethod.KRYLOV:
        return _krylov_lowest(sector, k, tol)
    return _tridiagonal_lowest(sector, k)


def sector_ground_state(
    sector: ParitySector,
    tol: float = DEFAULT_TOL,
    method: SolverMethod = SolverMethod.AUTO,
) -> EigenPair:
    energies, vectors = sector_lowest(sector, 2, method, tol)
    vector = canonical_sign(vectors[:, 0] / np.linalg.norm(vectors[:, 0]))
    residual = relative_residual(sector, energies[0], vector)
    if residual > tol:
        warnings.warn(
            f"ground state residual {residual:.3e} exceeds tol {tol:.1e}",
            ConvergenceWarning,
        )
    sector_gap = energies[1] - energies[0] if energies.size > 1 else math.inf
    return EigenPair(
        energy=float(energies[0]),
        vector=sector.embed(vector),
        parity=sector.label,
        residual=residual,
        sector_gap=float(sector_gap),
        guard=_guard(sector, tol),
    )


def ground_state(
    M: BandedSpinMatrix,
    tol: float = DEFAULT_TOL,
    method: SolverMethod = SolverMethod.AUTO,
) -> EigenPair:
    """Lowest eigenpair of the full matrix.

    Both sectors are solved and the lower one wins; within the degeneracy
    guard the sector holding m = S is taken so the choice is reproducible.
    """
    sectors = {s.label: s for s in M.split_sectors() if s.dimension}
    candidates = {p: sector_ground_state(s, tol, method) for p, s in sectors.items()}
    guard = _guard(M, tol)

    polarized = DickeBasis(M.dimension - 1).polarized_parity
    winner = candidates[polarized]
    for pair in candidates.values():
        if pair.energy < winner.energy - guard:
            winner = pair

    full_gap = winner.sector_gap
    for pair in candidates.values():
        if pair is not winner:
            full_gap = min(full_gap, pair.energy - winner.energy)
    return EigenPair(
        energy=winner.energy,
        vector=winner.vector,
        parity=winner.parity,
        residual=winner.residual,
        degenerate=bool(full_gap < guard),
        sector_gap=winner.sector_gap,
        guard=winner.guard,
    )


def lowest_energies(
    M: BandedSpinMatrix,
    k: int = 2,
    method: SolverMethod = SolverMethod.AUTO,
    tol: float = DEFAULT_TOL,
) -> list[tuple[float, Parity]]:
    levels = []
    for sector in M.split_sectors():
        if sector.dimension:
            energies, _ = sector_lowest(sector, k, method, tol)
            levels.extend((float(e), sector.label) for e in energies)
    return sorted(levels)[:k]


def full_spectrum(M: BandedSpinMatrix, dense_cap: int = DENSE_CAP) -> Spectrum:
    if M.dimension > dense_cap:
        raise DenseCapExceededError(
            f"full spectrum of dimension {M.dimension} exceeds the dense cap {dense_cap}"
        )
    energies, columns, parities = [], [], []
    for sector in M.split_sectors():
        if not sector.dimension:
            continue
        if sector.dimension == 1:
            values, vectors = sector.diag.copy(), np.ones((1, 1))
        else:
            values, vectors = scipy.linalg.eigh_tridiagonal(sector.diag, sector.offdiag)
        for n in range(values.size):
            energies.append(values[n])
            columns.append(sector.embed(canonical_sign(vectors[:, n])))
            parities.append(int(sector.label))
    order = np.argsort(np.array(energies), kind="stable")
    return Spectrum(
        energies=np.array(energies)[order],
        vectors=np.array(columns).T[:, order],
        parities=np.array(parities)[order],
    )


def gap(
    M: BandedSpinMatrix,
    within_sector: bool = False,
    tol: float = DEFAULT_TOL,
    method: SolverMethod = SolverMethod.AUTO,
) -> float:
    """E_1 - E_0 of the full matrix, or of the ground state's own parity sector.

    In the broken phase the two sectors hold an (exponentially) degenerate
    tunnelling doublet, and the harmonic excitation is the within-sector gap.
    """
    if not within_sector:
        (e0, _), (e1, _) = lowest_energies(M, 2, method, tol)
        return max(e1 - e0, 0.0)
    return max(ground_state(M, tol, method).sector_gap, 0.0)
