"""Exception hierarchy shared by every beamkit module."""


class BeamkitError(Exception):
    """Base class for all beamkit errors."""


class DimensionError(BeamkitError, ValueError):
    """Operand shapes are incompatible."""


class ParameterError(BeamkitError, ValueError):
    """An argument violates a documented precondition."""


class RankError(ParameterError):
    """A requested subspace order exceeds the numerical rank.

    Attributes
    ----------
    requested : int
    numerical_rank : int
    """

    def __init__(self, requested, numerical_rank, what="matrix"):
        self.requested = requested
        self.numerical_rank = numerical_rank
        super().__init__(
            f"requested order {requested} exceeds numerical rank "
            f"{numerical_rank} of the {what}"
        )


class NumericalError(BeamkitError, ArithmeticError):
    """An iterative routine failed to converge."""

    def __init__(self, message, iterations=None):
        self.iterations = iterations
        super().__init__(message)


class ConfigError(BeamkitError, ValueError):
    """Invalid experiment configuration; ``path`` names the offending field."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
