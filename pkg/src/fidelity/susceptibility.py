"""Ground-state fidelity and fidelity susceptibility chi_F(h).

Two estimators are provided and cross-checked by the test-suite:

  - perturbative: sum_{n != 0} |<n|H_I|0>|^2 / (E_n - E_0)^2 over the full
    spectrum of the ground state's parity sector (H_I = -2 S_z never couples
    the two sectors);
  - overlap: 2 (1 - F(h - d/2, h + d/2)) / d^2, Richardson-extrapolated
    between d and d/2.

1 - F is evaluated as ||a - s b||^2 / 2 with s the sign of <a|b>, which stays
accurate when F is within rounding distance of 1.
"""

import math
import typing
import warnings
from dataclasses import dataclass, field

import numpy as np

from src.enums import ChiMethod, Parity, SolverMethod
from src.exceptions import (
    ConvergenceWarning,
    DegeneracyWarning,
    DegenerateGroundStateError,
    InvalidParametersError,
    SectorMismatchError,
)
from src.model import (
    BandedSpinMatrix,
    DickeBasis,
    ModelParams,
    build_driving,
    build_hamiltonian,
)
from src.settings import (
    CONVERGENCE_RTOL,
    CRITICAL_DELTA_H,
    CRITICAL_WINDOW,
    DEFAULT_DELTA_H,
    DEFAULT_TOL,
    DEGENERACY_FACTOR,
    DENSE_CAP,
    H_C,
)
from src.solver import (
    EigenPair,
    Spectrum,
    full_spectrum,
    ground_state,
    sector_ground_state,
)

type HamiltonianFamily = typing.Callable[[float], BandedSpinMatrix]


@dataclass(frozen=True)
class ChiEstimate:
    value: float
    method: ChiMethod
    delta_h: float = field(default=0.0)
    convergence_error: float = field(default=0.0)
    converged: bool = field(default=True)

    def __post_init__(self):
        if not self.value >= 0:
            raise InvalidParametersError(
                f"fidelity susceptibility must be >= 0, got {self.value}"
            )

    @property
    def flag(self) -> str:
        return "" if self.converged else "unconverged"

    def __json__(self):
        """Return self in a JSON-serialisable format."""
        return {
            "value": self.value,
            "method": self.method.value,
            "delta_h": self.delta_h,
            "convergence_error": self.convergence_error,
            "converged": self.converged,
        }


def default_delta(h: float) -> float:
    """Finite-difference step: finer near the critical point, where chi_F peaks."""
    return CRITICAL_DELTA_H if abs(h - H_C) < CRITICAL_WINDOW else DEFAULT_DELTA_H


def _family(params: ModelParams) -> HamiltonianFamily:
    return lambda h: build_hamiltonian(params.with_field(h))


def _refuse_if_degenerate(pair: EigenPair, where: str):
    if pair.sector_degenerate:
        raise DegenerateGroundStateError(
            f"ground state at {where} is degenerate inside the "
            f"{pair.parity.as_serialised_string()} sector "
            f"(gap {pair.sector_gap:.3e} < guard {pair.guard:.3e})"
        )


# perturbative estimator


def perturbative_sum(
    spectrum: Spectrum,
    driving: BandedSpinMatrix,
    ground_index: int = 0,
    guard: float = 0.0,
) -> float:
    """Perturbative chi_F sum ([df/dh]^2 = 1) over the levels sharing the ground parity.

    driving must conserve parity, as every operator built by this package does.
    """
    ground = spectrum.vectors[:, ground_index]
    elements = spectrum.vectors.T @ driving.matvec(ground)
    same_sector = spectrum.parities == spectrum.parities[ground_index]
    same_sector[ground_index] = False
    if not same_sector.any():
        return 0.0
    denominators = spectrum.energies[same_sector] - spectrum.energies[ground_index]
    if np.min(np.abs(denominators)) <= guard:
        raise DegenerateGroundStateError(
            f"ground state is degenerate inside its parity sector "
            f"(gap {np.min(np.abs(denominators)):.3e} <= guard {guard:.3e})"
        )
    return float(np.sum(elements[same_sector] ** 2 / denominators**2))


def _ground_index(spectrum: Spectrum, polarized: Parity, guard: float) -> int:
    """Index of the ground level, preferring the polarized sector within the guard."""
    firsts = {}
    for index, parity in enumerate(spectrum.parities):
        firsts.setdefault(Parity(int(parity)), index)
    winner = firsts[polarized] if polarized in firsts else 0
    for index in firsts.values():
        if spectrum.energies[index] < spectrum.energies[winner] - guard:
            winner = index
    others = [i for p, i in firsts.items() if i != winner]
    if any(spectrum.energies[i] - spectrum.energies[winner] < guard for i in others):
        warnings.warn(
            "ground state is quasi-degenerate across parity sectors; "
            "chi_F is taken in the sector containing m = S",
            DegeneracyWarning,
        )
    return winner


def chi_perturbative(
    params: ModelParams,
    tol: float = DEFAULT_TOL,
    dense_cap: int = DENSE_CAP,
) -> ChiEstimate:
    H = build_hamiltonian(params)
    spectrum = full_spectrum(H, dense_cap)
    guard = DEGENERACY_FACTOR * tol * max(1.0, H.norm_inf())
    polarized = DickeBasis(params.N).polarized_parity
    index = _ground_index(spectrum, polarized, guard)
    value = perturbative_sum(spectrum, build_driving(params), index, guard)
    return ChiEstimate(value=value, method=ChiMethod.PERTURBATIVE)


# overlap estimator


def _common_pairs(
    family: HamiltonianFamily,
    h1: float,
    h2: float,
    tol: float,
    method: SolverMethod,
) -> tuple[EigenPair, EigenPair]:
    """Ground states at h1 and h2 taken in one parity sector.

    When the full-matrix ground states disagree on the sector, a point whose
    ground state is quasi-degenerate across sectors is re-solved in the
    other point's sector; otherwise the overlap would be identically zero.
    """
    first = ground_state(family(h1), tol, method)
    second = ground_state(family(h2), tol, method)
    if first.parity != second.parity:
        if first.degenerate and not second.degenerate:
            first = sector_ground_state(family(h1).sector(second.parity), tol, method)
        elif second.degenerate:
            second = sector_ground_state(family(h2).sector(first.parity), tol, method)
        else:
            raise SectorMismatchError(
                f"ground states at h = {h1} ({first.parity.as_serialised_string()}) "
                f"and h = {h2} ({second.parity.as_serialised_string()}) lie in "
                "different parity sectors"
            )
    if first.degenerate or second.degenerate:
        warnings.warn(
            "ground state is quasi-degenerate across parity sectors; "
            "the overlap is taken inside one sector",
            DegeneracyWarning,
        )
    _refuse_if_degenerate(first, f"h = {h1}")
    _refuse_if_degenerate(second, f"h = {h2}")
    return first, second


def _infidelity(a: np.ndarray, b: np.ndarray) -> float:
    """1 - |<a|b>| for unit vectors, without cancellation."""
    sign = 1.0 if float(a @ b) >= 0 else -1.0
    diff = a - sign * b
    return 0.5 * float(diff @ diff)


def fidelity_overlap(
    params: ModelParams,
    h1: float,
    h2: float,
    tol: float = DEFAULT_TOL,
    method: SolverMethod = SolverMethod.AUTO,
) -> float:
    """|<psi_0(h1)|psi_0(h2)>| at fixed (N, gamma, lambda)."""
    if h1 == h2:
        params.with_field(h1)  # domain check only
        return 1.0
    family = _family(params)
    first, second = _common_pairs(family, h1, h2, tol, method)
    return float(np.clip(abs(first.vector @ second.vector), 0.0, 1.0))


def _sector_pair(
    family: HamiltonianFamily,
    h: float,
    parity: Parity,
    tol: float,
    method: SolverMethod,
) -> EigenPair:
    pair = sector_ground_state(family(h).sector(parity), tol, method)
    _refuse_if_degenerate(pair, f"h = {h}")
    return pair


def _raw_estimate(first: EigenPair, second: EigenPair, delta_h: float) -> float:
    return 2 * _infidelity(first.vector, second.vector) / delta_h**2


def chi_overlap_family(
    family: HamiltonianFamily,
    h: float,
    delta_h: float,
    tol: float = DEFAULT_TOL,
    method: SolverMethod = SolverMethod.AUTO,
) -> ChiEstimate:
    """Richardson-extrapolated overlap estimate of chi_F for any matrix family h -> H(h)."""
    if not delta_h > 0:
        raise InvalidParametersError(f"delta_h must be > 0, got {delta_h}")
    outer = _common_pairs(family, h - delta_h / 2, h + delta_h / 2, tol, method)
    parity = outer[0].parity
    inner = (
        _sector_pair(family, h - delta_h / 4, parity, tol, method),
        _sector_pair(family, h + delta_h / 4, parity, tol, method),
    )
    coarse = _raw_estimate(*outer, delta_h)
    fine = _raw_estimate(*inner, delta_h / 2)
    value = max((4 * fine - coarse) / 3, 0.0)
    error = abs(coarse - fine)
    converged = error <= CONVERGENCE_RTOL * max(value, np.finfo(float).tiny)
    if not converged:
        warnings.warn(
            f"chi_F at h = {h} did not converge: Richardson discrepancy "
            f"{error:.3e} against value {value:.3e} (delta_h = {delta_h:g})",
            ConvergenceWarning,
        )
    return ChiEstimate(
        value=value,
        method=ChiMethod.OVERLAP,
        delta_h=delta_h,
        convergence_error=error,
        converged=converged,
    )


def _check_window(params: ModelParams, delta_h: float):
    if params.h - delta_h / 2 < 0:
        raise InvalidParametersError(
            f"h - delta_h/2 = {params.h - delta_h / 2:g} leaves the domain h >= 0"
        )


def chi_overlap(
    params: ModelParams,
    delta_h: float | None = None,
    tol: float = DEFAULT_TOL,
    method: SolverMethod = SolverMethod.AUTO,
) -> ChiEstimate:
    delta_h = default_delta(params.h) if delta_h is None else delta_h
    _check_window(params, delta_h)
    return chi_overlap_family(_family(params), params.h, delta_h, tol, method)


def overlap_estimate(
    params: ModelParams,
    delta_h: float,
    tol: float = DEFAULT_TOL,
    method: SolverMethod = SolverMethod.AUTO,
) -> float:
    """Unextrapolated 2 (1 - F(h - d/2, h + d/2)) / d^2."""
    _check_window(params, delta_h)
    family = _family(params)
    pairs = _common_pairs(
        family, params.h - delta_h / 2, params.h + delta_h / 2, tol, method
    )
    return _raw_estimate(*pairs, delta_h)


def convergence_order(
    params: ModelParams,
    deltas: typing.Sequence[float],
    tol: float = DEFAULT_TOL,
) -> float:
    """Observed order p of the symmetric estimator on a geometric ladder d, d/r, d/r^2."""
    if len(deltas) != 3:
        raise InvalidParametersError("convergence_order needs exactly three steps")
    d1, d2, d3 = deltas
    if not d1 > d2 > d3 > 0 or not math.isclose(d1 / d2, d2 / d3, rel_tol=1e-9):
        raise InvalidParametersError("steps must form a decreasing geometric ladder")
    e1, e2, e3 = (overlap_estimate(params, d, tol) for d in deltas)
    return math.log(abs(e1 - e2) / abs(e2 - e3)) / math.log(d1 / d2)


def chi(
    params: ModelParams,
    tol: float = DEFAULT_TOL,
    dense_cap: int = DENSE_CAP,
    delta_h: float | None = None,
) -> ChiEstimate:
    """chi_F with the method picked by size: perturbative under the dense cap."""
    if params.N + 1 <= dense_cap:
        return chi_perturbative(params, tol, dense_cap)
    return chi_overlap(params, delta_h, tol)
