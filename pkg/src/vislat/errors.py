"""Exception hierarchy. Each class carries the exit code the CLI maps it to."""


class VislatError(Exception):
    exit_code = 1


class UsageError(VislatError, ValueError):
    exit_code = 2


class ResourceError(VislatError):
    exit_code = 3


class DomainError(VislatError, ValueError):
    exit_code = 4


class SingularBasisError(DomainError):
    pass


class InvalidAutomorphismError(DomainError):
    pass


class UnsupportedDimensionError(DomainError):
    pass
