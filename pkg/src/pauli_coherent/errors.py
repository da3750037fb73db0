"""Exception hierarchy shared by all modules."""


class PauliCoherentError(ValueError):
    """Base class for every error raised by this package."""


class InvalidState(PauliCoherentError):
    pass


class DimError(PauliCoherentError):
    pass


class NotHermitian(PauliCoherentError):
    pass


class NotPSD(PauliCoherentError):
    pass


class InvalidDistribution(PauliCoherentError):
    pass


class Unsupported(PauliCoherentError):
    pass


class DegenerateState(PauliCoherentError):
    """Raised when an ansatz decodes to a (numerically) zero vector."""


class ShapeError(PauliCoherentError):
    pass


class ConfigError(PauliCoherentError):
    """Invalid run configuration (unknown field, bad value)."""
