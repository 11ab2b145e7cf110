"""Large-N predictions from the Holstein-Primakoff boson and its Bogoliubov rotation.

Symmetric phase (h > 1): one harmonic mode of frequency 2 sqrt((h-1)(h-gamma))
above E_0 = -h(N+1) + sqrt((h-1)(h-gamma)). Broken phase (0 <= h < 1): the
same construction around the tilted classical spin, with an extensive
susceptibility. The susceptibility diverges with exponent 2 from above and
1/2 (per spin) from below.
"""

import math
import typing
import warnings
from dataclasses import dataclass

from src.enums import Phase
from src.exceptions import AnalyticWarning, BranchError, InvalidParametersError

_ALPHA = {Phase.SYMMETRIC: 2.0, Phase.BROKEN: 0.5}


class BrokenPhaseChi(typing.NamedTuple):
    leading: float
    subleading: float


def _check_gamma(gamma: float, allow_isotropic: bool = False):
    if allow_isotropic and gamma == 1:
        return
    if not abs(gamma) < 1:
        raise InvalidParametersError(f"|gamma| must be < 1, got {gamma}")


def _check_field(h: float):
    if not h >= 0:
        raise InvalidParametersError(f"h must be >= 0, got {h}")


def phase_of(h: float) -> Phase:
    _check_field(h)
    return Phase.of_field(h)


def chi_symmetric(gamma: float, h: float) -> float:
    """chi_F for h > 1.

    >>> round(chi_symmetric(0.5, 2.0), 7)
    0.0034722
    """
    _check_gamma(gamma)
    if h == 1:
        raise BranchError("chi_symmetric is singular at h = 1")
    if h < 1:
        raise BranchError(f"chi_symmetric needs h > 1, got h = {h}")
    return (1 - gamma) ** 2 / (32 * (h - 1) ** 2 * (h - gamma) ** 2)


def chi_broken(gamma: float, h: float, N: int) -> BrokenPhaseChi:
    """chi_F for 0 <= h < 1, as extensive and O(1) parts kept apart.

    The O(1) part is known to disagree with exact numerics; comparisons
    below h = 1 should use the leading part only.

    >>> chi_broken(0.0, 0.0, 1000)
    BrokenPhaseChi(leading=250.0, subleading=0.0)
    """
    _check_gamma(gamma)
    _check_field(h)
    if h >= 1:
        raise BranchError(f"chi_broken needs 0 <= h < 1, got h = {h}")
    leading = N * chi_intensive_broken(gamma, h)
    subleading = h**2 * (h**2 - gamma) ** 2 / (32 * (1 - gamma) ** 2 * (1 - h**2) ** 2)
    return BrokenPhaseChi(leading, subleading)


def chi_intensive_broken(gamma: float, h: float) -> float:
    """Leading chi_F / N below h = 1."""
    _check_gamma(gamma)
    if not 0 <= h < 1:
        raise BranchError(f"chi_intensive_broken needs 0 <= h < 1, got h = {h}")
    return 1 / (4 * math.sqrt((1 - h**2) * (1 - gamma)))


def hp_gap(gamma: float, h: float) -> float:
    """Harmonic excitation energy; zero at h = 1.

    >>> hp_gap(0.0, 0.0)
    2.0
    >>> hp_gap(0.5, 1.0)
    0.0
    """
    _check_gamma(gamma)
    _check_field(h)
    if h >= 1:
        return 2 * math.sqrt((h - 1) * (h - gamma))
    return 2 * math.sqrt((1 - h**2) * (1 - gamma))


def hp_ground_energy(
    gamma: float, h: float, N: int, match_hamiltonian: bool = False
) -> float:
    """Ground energy to O(1).

    With match_hamiltonian the h >= 1 branch is shifted by (1+gamma)/2, the
    constant carried by the pair Hamiltonian's diagonal; the broken branch
    already includes it. The shifted branches meet at h = 1.
    """
    _check_gamma(gamma)
    _check_field(h)
    if h >= 1:
        energy = -h * (N + 1) + math.sqrt((h - 1) * (h - gamma))
        return energy + (1 + gamma) / 2 if match_hamiltonian else energy
    return -N * (1 + h**2) / 2 - (1 - gamma) / 2 + math.sqrt((1 - h**2) * (1 - gamma))


def bogoliubov_angle(gamma: float, h: float) -> float:
    """Theta with tanh(Theta) = (1-gamma)/(2h-1-gamma), for h > 1.

    >>> round(bogoliubov_angle(0.0, 1.5), 4)
    0.5493
    """
    _check_gamma(gamma, allow_isotropic=True)
    if h <= 1:
        raise BranchError(
            f"the Bogoliubov angle diverges at h = 1 and is undefined below, got h = {h}"
        )
    return math.atanh((1 - gamma) / (2 * h - 1 - gamma))


def chi_from_bogoliubov(gamma: float, h: float) -> float:
    """Symmetric-phase chi_F rebuilt as sinh^2(Theta) / (2 gap^2).

    Only the two-quasiparticle state couples to the ground state through
    -2 S_z, with matrix element sqrt(2) sinh(Theta) and energy 2 * gap.
    """
    theta = bogoliubov_angle(gamma, h)
    return math.sinh(theta) ** 2 / (2 * hp_gap(gamma, h) ** 2)


def alpha_exponent(phase: Phase) -> float:
    """Divergence exponent of the intensive chi_F on each side of h = 1."""
    return _ALPHA[Phase(phase)]


@dataclass(frozen=True)
class HPPrediction:
    phase: Phase
    chi_f: float | None
    chi_subleading: float | None
    gap: float
    ground_energy: float
    bogoliubov_angle: float | None

    def __post_init__(self):
        if self.gap < 0:
            raise InvalidParametersError("gap must be >= 0")


def predict(
    gamma: float, h: float, N: int, match_hamiltonian: bool = False
) -> HPPrediction:
    """Every closed-form quantity at one point; chi columns are None at h = 1."""
    phase = phase_of(h)
    chi_f = subleading = angle = None
    if h == 1:
        warnings.warn(
            "h = 1 is singular for both susceptibility branches", AnalyticWarning
        )
    elif phase == Phase.SYMMETRIC:
        chi_f = chi_symmetric(gamma, h)
        angle = bogoliubov_angle(gamma, h)
    else:
        chi_f, subleading = chi_broken(gamma, h, N)
    return HPPrediction(
        phase=phase,
        chi_f=chi_f,
        chi_subleading=subleading,
        gap=hp_gap(gamma, h),
        ground_energy=hp_ground_energy(gamma, h, N, match_hamiltonian),
        bogoliubov_angle=angle,
    )
