"""Exception types raised across the workbench."""


class FleError(Exception):
    """Base class for all workbench errors."""


class MalformedTable(FleError):
    pass


class NotALattice(FleError):
    pass


class NotResiduated(FleError):
    def __init__(self, x, y, message=None):
        self.x = x
        self.y = y
        super().__init__(message or f"no residual for ({x}, {y})")


class InvalidAlgebra(FleError):
    """Raised by constructors when validation fails; carries the report."""

    def __init__(self, report):
        self.report = report
        super().__init__(report.detail or "invalid algebra")


class NotANucleus(FleError):
    pass


class ParseError(FleError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownIdentifier(ParseError):
    pass


class UnboundVariable(FleError):
    pass


class UnboundDelta(FleError):
    pass


class UnknownName(FleError):
    pass


class DeltaNotIncreasing(FleError):
    pass


class NotIntegral(FleError):
    pass


class PreconditionViolated(FleError):
    pass


class SizeCapExceeded(FleError):
    pass


class UnknownFixture(FleError):
    pass


class ExpectationMismatch(FleError):
    def __init__(self, name, diffs):
        self.name = name
        self.diffs = diffs
        super().__init__(f"{name}: " + "; ".join(map(str, diffs)))


class UnknownCheck(FleError):
    pass


class ScopeViolation(FleError):
    pass
