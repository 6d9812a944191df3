"""Error hierarchy shared by the library and the CLI exit-code contract."""


class LogorbiError(Exception):
    """Base class; carries the CLI exit code for its error class."""

    exit_code = 1


class ValidationError(LogorbiError):
    """Malformed or out-of-contract input."""

    exit_code = 2


class GeometryError(ValidationError):
    """An integration path violates the singularity exclusion radius."""


class InternalConsistencyError(ValidationError):
    """Data that should have been produced by this library is inconsistent
    (e.g. a coset table whose induced genus does not solve to an integer)."""


class ResourceError(LogorbiError):
    """A configured budget (cosets, search nodes, model count) was exceeded."""

    exit_code = 3


class NumericalAccuracyError(LogorbiError):
    """The integrator could not meet the requested tolerance."""

    exit_code = 4
