class StbemError(Exception):
    """Base class for all errors raised by the package."""


class InputError(StbemError, ValueError):
    pass


class DomainError(StbemError, ValueError):
    """A point or time lies outside the region where an operation is defined."""


class SingularityError(DomainError):
    pass


class ParameterError(StbemError, ValueError):
    pass


class ContractError(StbemError, ValueError):
    """An argument has the wrong function-space role (basis kind, space tag)."""


class UnsupportedError(StbemError, NotImplementedError):
    pass


class SolverError(StbemError, RuntimeError):
    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition
