"""Exception types shared across the package.

The CLI maps these onto exit codes: parameter/usage problems exit 1,
engine states outside the label alphabet exit 2.
"""


class WreathflopError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(WreathflopError, ValueError):
    """Invalid or mismatched parameters (bad k, mismatched group params, ...)."""


class SizeError(ParameterError):
    """An enumeration would exceed its configured bound."""


class ConfigurationError(WreathflopError, ValueError):
    """A configuration violates its structural invariants, or its JSON is malformed."""


class IllegalMoveError(WreathflopError, ValueError):
    """A flop move violates the move invariants against the given configuration."""


class UnsupportedStateError(WreathflopError, RuntimeError):
    """A rewrite would need a vertex label or edge state outside the engine's alphabet.

    The engine refuses to extrapolate; explorers record these as dead arcs.
    """


class NotFoundError(WreathflopError, LookupError):
    """A requested key is not present in the explored graph."""


class NoPathError(WreathflopError):
    """No arc sequence connects the two requested nodes."""
