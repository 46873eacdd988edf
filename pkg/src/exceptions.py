"""Error types raised by the simulator library.

Library code raises these and never exits; the CLI maps each one to its
own exit code in ``src.middleware.error_handlers``.
"""


class SimulatorError(Exception):
    """Base class for all simulator errors."""


class SpecParseError(SimulatorError, ValueError):
    """A matrix spec or vector file could not be parsed."""


class DimensionMismatchError(SimulatorError, ValueError):
    """Operand dimensions do not agree."""


class ZeroOperatorError(SimulatorError, ValueError):
    """The structured matrix is identically zero."""


class ZeroVectorError(SimulatorError, ValueError):
    """The input vector is zero and cannot be prepared as a state."""


class SingularCirculantError(SimulatorError, ValueError):
    """A circulant has an eigenvalue below the singularity threshold."""

    def __init__(self, index, value, threshold):
        self.index = index
        self.value = value
        self.threshold = threshold
        super().__init__(
            f"circulant is singular: eigenvalue {index} (lambda_{index} = {value:.3e}) "
            f"has modulus <= {threshold:.3e}"
        )


class OracleCapExceededError(SimulatorError, ValueError):
    """A dense materialization was requested above the oracle cap."""

    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"dense materialization of dimension {size} exceeds oracle cap {cap}")


class NotPowerOfTwoError(SimulatorError, ValueError):
    """The register simulation needs a power-of-two base dimension."""


class InvalidParameterError(SimulatorError, ValueError):
    """A scalar parameter is outside its legal range."""


class PostSelectionError(SimulatorError, RuntimeError):
    """The first ancilla carried probability mass it should not have."""
