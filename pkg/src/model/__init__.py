from src.model.banded import BandedSpinMatrix, ParitySector, matvec, split_sectors
from src.model.basis import DickeBasis, ModelParams
from src.model.hamiltonian import build_driving, build_hamiltonian

__all__ = [
    "BandedSpinMatrix",
    "DickeBasis",
    "ModelParams",
    "ParitySector",
    "build_driving",
    "build_hamiltonian",
    "matvec",
    "split_sectors",
]
