"""Exceptions and warning categories used across the package."""


class LMGError(Exception):
    """Base class of every error raised by this package."""


class InvalidParametersError(LMGError, ValueError):
    """Model parameters, dimensions or tolerances outside their valid domain."""


class BranchError(LMGError, ValueError):
    """An analytic formula was evaluated outside its phase or at its singular point."""


class ConvergenceError(LMGError):
    """An iterative solve hit its iteration cap."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (achieved residual {residual:.3e})")
        self.residual = residual


class DenseCapExceededError(LMGError):
    """A full spectrum was requested for a matrix above the dense cap."""


class ComputationRefusedError(LMGError):
    """The requested quantity is ill-defined for these inputs.

    Subclasses are the only errors the CLI reports with exit status 1."""


class DegenerateGroundStateError(ComputationRefusedError):
    """The ground state is degenerate inside its parity sector."""


class SectorMismatchError(ComputationRefusedError):
    """Two ground states live in different parity sectors, so their overlap is zero."""


class NoInteriorMaximumError(LMGError):
    """The sampled susceptibility has no interior maximum in the bracket."""

    def __init__(self, message: str, samples: list[tuple[float, float]]):
        listing = ", ".join(f"({h:.6g}, {chi:.6g})" for h, chi in samples)
        super().__init__(f"{message}; samples: {listing}")
        self.samples = samples


class FitError(LMGError, ValueError):
    """A scaling fit cannot be performed on the given points."""


class CollapseError(LMGError, ValueError):
    """A data collapse cannot be performed on the given curves."""


class ConfigError(LMGError, ValueError):
    """The run configuration is invalid."""


class NumericsWarning(Warning):
    """Base warning class for numerical diagnostics.

    Should be favoured over UserWarning if no subclass fits, since these
    warnings are about the numbers and not about how the tool was called."""


class ConvergenceWarning(NumericsWarning):
    """An estimate was returned although it did not meet its convergence threshold."""


class DegeneracyWarning(NumericsWarning):
    """The ground state is quasi-degenerate across parity sectors."""


class AnalyticWarning(NumericsWarning):
    """A closed-form prediction is singular at the requested point."""
