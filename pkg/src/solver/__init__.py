from src.solver.eigensolver import (
    EigenPair,
    Spectrum,
    full_spectrum,
    gap,
    ground_state,
    lowest_energies,
    relative_residual,
    sector_ground_state,
)

__all__ = [
    "EigenPair",
    "Spectrum",
    "full_spectrum",
    "gap",
    "ground_state",
    "lowest_energies",
    "relative_residual",
    "sector_ground_state",
]
