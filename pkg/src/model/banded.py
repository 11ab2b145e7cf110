from dataclasses import dataclass

import numpy as np

from src.enums import Parity
from src.exceptions import InvalidParametersError
from src.settings import Vector


def _frozen_array(values) -> Vector:
    array = np.array(values, dtype=np.float64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class BandedSpinMatrix:
    """Real symmetric matrix with entries only on offsets 0 and +-2.

    offdiag2[i] couples basis indices i and i + 2.
    """

    diag: Vector
    offdiag2: Vector

    def __post_init__(self):
        diag = _frozen_array(self.diag)
        offdiag2 = _frozen_array(self.offdiag2)
        if diag.ndim != 1 or diag.size < 1:
            raise InvalidParametersError("diag must be a non-empty 1-d array")
        if offdiag2.shape != (max(diag.size - 2, 0),):
            raise InvalidParametersError(
                f"offdiag2 must have length {max(diag.size - 2, 0)}, "
                f"got {offdiag2.size}"
            )
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag2", offdiag2)

    @property
    def dimension(self) -> int:
        return self.diag.size

    def matvec(self, v) -> Vector:
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.dimension,):
            raise InvalidParametersError(
                f"vector of length {v.shape} does not match dimension {self.dimension}"
            )
        out = self.diag * v
        if self.offdiag2.size:
            out[:-2] += self.offdiag2 * v[2:]
            out[2:] += self.offdiag2 * v[:-2]
        return out

    def to_dense(self) -> np.ndarray:
        dense = np.diag(self.diag)
        if self.offdiag2.size:
            dense += np.diag(self.offdiag2, k=2) + np.diag(self.offdiag2, k=-2)
        return dense

    def norm_inf(self) -> float:
        """Maximum absolute row sum, the scale used for relative residuals."""
        rows = np.abs(self.diag).copy()
        if self.offdiag2.size:
            rows[:-2] += np.abs(self.offdiag2)
            rows[2:] += np.abs(self.offdiag2)
        return float(rows.max())

    def sector(self, parity: Parity) -> "ParitySector":
        indices = np.arange(int(parity), self.dimension, 2)
        # offdiag2[i] links i and i + 2, so the sector's chain uses every other entry
        return ParitySector(
            label=parity,
            indices=indices,
            diag=self.diag[indices],
            offdiag=self.offdiag2[indices[:-1]],
            full_dimension=self.dimension,
        )

    def split_sectors(self) -> tuple["ParitySector", "ParitySector"]:
        return self.sector(Parity.EVEN), self.sector(Parity.ODD)


@dataclass(frozen=True, eq=False)
class ParitySector:
    """One parity block of a BandedSpinMatrix, compacted to a tridiagonal matrix."""

    label: Parity
    indices: np.ndarray
    diag: Vector
    offdiag: Vector
    full_dimension: int

    def __post_init__(self):
        indices = np.array(self.indices, dtype=np.intp)
        indices.setflags(write=False)
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "diag", _frozen_array(self.diag))
        object.__setattr__(self, "offdiag", _frozen_array(self.offdiag))
        if self.offdiag.size != max(self.diag.size - 1, 0):
            raise InvalidParametersError("sector offdiag must have length dimension - 1")

    @property
    def dimension(self) -> int:
        return self.diag.size

    def matvec(self, v) -> Vector:
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.dimension,):
            raise InvalidParametersError(
                f"vector of length {v.shape} does not match sector dimension "
                f"{self.dimension}"
            )
        out = self.diag * v
        if self.offdiag.size:
            out[:-1] += self.offdiag * v[1:]
            out[1:] += self.offdiag * v[:-1]
        return out

    def to_dense(self) -> np.ndarray:
        dense = np.diag(self.diag)
        if self.offdiag.size:
            dense += np.diag(self.offdiag, k=1) + np.diag(self.offdiag, k=-1)
        return dense

    def embed(self, v) -> Vector:
        """Lift a sector vector into the full basis (zeros on the other sector)."""
        full = np.zeros(self.full_dimension)
        full[self.indices] = v
        return full

    def restrict(self, full) -> Vector:
        return np.asarray(full, dtype=np.float64)[self.indices]


def matvec(M: BandedSpinMatrix, v) -> Vector:
    return M.matvec(v)


def split_sectors(M: BandedSpinMatrix) -> tuple[ParitySector, ParitySector]:
    """Even and odd index sectors; their direct sum is M up to the parity permutation."""
    return M.split_sectors()
