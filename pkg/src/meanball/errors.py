"""Error types shared across the package.

Plain ``ValueError`` is used for contract violations in pure functions
(bad lambda, wrong dimension passed by the caller, ...).  The classes
below mark failures that the CLI maps to distinct exit codes.
"""


class ConfigError(Exception):
    """Invalid configuration document or option combination (exit code 2)."""


class DataError(Exception):
    """Malformed or out-of-contract input data (exit code 3)."""


class VerificationFailure(Exception):
    """A numerical certificate did not pass (exit code 4)."""
