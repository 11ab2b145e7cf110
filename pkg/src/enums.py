from enum import IntEnum, StrEnum


class Parity(IntEnum):
    """Parity of the Dicke index i = m + S; the Hamiltonian never mixes the two."""

    EVEN = 0
    ODD = 1

    @classmethod
    def of_index(cls, index: int):
        return cls(index % 2)

    def as_serialised_string(self):
        return self.name.lower()


class Phase(StrEnum):
    SYMMETRIC = "symmetric"
    BROKEN = "broken"

    @classmethod
    def of_field(cls, h: float):
        """h >= 1 is the polarized (symmetric) phase, 0 <= h < 1 the broken one."""
        return cls.SYMMETRIC if h >= 1 else cls.BROKEN


class ChiMethod(StrEnum):
    PERTURBATIVE = "perturbative"
    OVERLAP = "overlap"
    SYNTHETIC = "synthetic"


class SolverMethod(StrEnum):
    AUTO = "auto"
    TRIDIAGONAL = "tridiagonal"
    KRYLOV = "krylov"


class Quantity(StrEnum):
    MU = "mu"
    DELTA = "delta"
    NU = "nu"


class Command(StrEnum):
    SWEEP = "sweep"
    PEAK = "peak"
    SCALE = "scale"
    COLLAPSE = "collapse"
    ANALYTIC = "analytic"
    VERIFY = "verify"


class ExitCode(IntEnum):
    SUCCESS = 0
    REFUSED = 1
    INVALID_CONFIG = 2
    VERIFY_FAILED = 3
