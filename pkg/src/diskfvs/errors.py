"""Exception hierarchy shared across the package."""


class DiskFvsError(Exception):
    """Base class for all package errors."""


class InputError(DiskFvsError):
    """Malformed user input: bad ids, bad file syntax, bad parameters."""


class ValidationError(DiskFvsError):
    """A structural precondition failed (invalid partition, decomposition)."""


class InternalError(DiskFvsError):
    """A guaranteed invariant broke; indicates a bug, not bad input."""


class ResourceError(DiskFvsError):
    """The requested computation exceeds a configured budget."""
