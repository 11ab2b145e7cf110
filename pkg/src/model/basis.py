import math
from dataclasses import dataclass, field, replace

import numpy as np

from src.enums import Parity
from src.exceptions import InvalidParametersError
from src.settings import Vector


@dataclass(frozen=True)
class ModelParams:
    """One LMG Hamiltonian instance (N, gamma, h, lambda)."""

    N: int
    gamma: float
    h: float
    lam: float = field(default=1.0)

    def __post_init__(self):
        if isinstance(self.N, bool) or int(self.N) != self.N or self.N < 1:
            raise InvalidParametersError(f"N must be a positive integer, got {self.N}")
        if self.gamma == 1:
            raise InvalidParametersError(
                "gamma = 1 is the isotropic level-crossing line, where the "
                "fidelity susceptibility of a state with good quantum numbers "
                "is not defined"
            )
        if not abs(self.gamma) < 1:
            raise InvalidParametersError(f"|gamma| must be < 1, got {self.gamma}")
        if not self.h >= 0:
            raise InvalidParametersError(
                f"h must be >= 0 (the spectrum is symmetric under h -> -h), got {self.h}"
            )
        if not math.isfinite(self.lam):
            raise InvalidParametersError(f"lambda must be finite, got {self.lam}")

    def with_field(self, h: float):
        return replace(self, h=h)

    def __json__(self):
        """Return self in a JSON-serialisable format."""
        return {"N": self.N, "gamma": self.gamma, "h": self.h, "lam": self.lam}


@dataclass(frozen=True)
class DickeBasis:
    """Maximal-spin sector S = N/2, ordered by ascending m = -S, ..., S."""

    N: int

    def __post_init__(self):
        if self.N < 1:
            raise InvalidParametersError(f"N must be >= 1, got {self.N}")

    @property
    def S(self) -> float:
        return self.N / 2

    @property
    def dimension(self) -> int:
        return self.N + 1

    @property
    def m_values(self) -> Vector:
        return np.arange(self.dimension, dtype=np.float64) - self.S

    def index_of(self, m: float) -> int:
        index = m + self.S
        if index != int(index) or not 0 <= index < self.dimension:
            raise InvalidParametersError(f"m = {m} is not in the S = {self.S} multiplet")
        return int(index)

    @property
    def polarized_parity(self) -> Parity:
        """Parity of the fully polarized state m = S."""
        return Parity.of_index(self.N)
