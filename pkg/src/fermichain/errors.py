"""Exception types shared across the package."""


class ChainError(Exception):
    """Base class for errors raised by fermichain."""


class ModelError(ChainError, ValueError):
    """Inconsistent or malformed model specification."""


class DegenerateGroundStateError(ChainError):
    """The ground state is (numerically) degenerate, so the bipartition is not pure."""


class SpectralBoundError(ChainError):
    """A mode-spectrum value left [0, 1] by more than the allowed noise."""


class DegenerateSymbolError(ChainError):
    """The dispersion vanishes identically."""
