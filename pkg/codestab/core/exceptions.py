class CodestabError(Exception):
    """Base class for every error raised by codestab."""


class ContractViolationError(CodestabError, ValueError):
    """Inputs violate an operation's preconditions (sizes, ranges)."""


class InvalidCodeError(CodestabError):
    """Checks do not define a valid stabilizer code."""

    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


class NotAStabilizerError(CodestabError):
    """The operator is not an element of the stabilizer group."""


class ConstructionError(CodestabError):
    """A code family could not be built from the given parameters."""


class AlistParseError(CodestabError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class PatchTooLargeError(CodestabError):
    """A local patch exceeds the dense patch threshold."""


class ConsistencyError(CodestabError):
    """An internal invariant failed."""


class NumericFailureError(CodestabError):
    """A numerical tolerance or eigensolver convergence check failed."""


class InfeasibleError(CodestabError):
    """No admissible value exists for the requested bound."""
