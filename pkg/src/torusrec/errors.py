"""Exception types shared across the package.

Mathematical failures (NotErgodic, Dependent verdicts) are distinct from
usage errors; the CLI maps the former to exit code 1 and config/parse
problems to exit code 2.
"""


class TorusrecError(Exception):
    """Base class for all package errors."""


class UnknownGenerator(TorusrecError):
    """A scalar references a generator that is not in the registry."""


class LimitExceeded(TorusrecError):
    """A guarded parameter (binomial order, seminorm depth) is out of range."""


class NotIntegerValued(TorusrecError):
    """An exponent polynomial does not take integer values on integer inputs."""


class NotErgodic(TorusrecError):
    """The system fails the invariant-character ergodicity test.

    Carries the witness character data so callers can report it.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Unsupported(TorusrecError):
    """The operation is not defined for this observable or system kind."""


class ConfigError(TorusrecError):
    """The experiment config file is malformed or references unknown names."""
