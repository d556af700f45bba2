"""Exception types shared by the library and the CLI."""


class EulerPathsError(ValueError):
    exit_code = 10


class MalformedInput(EulerPathsError):
    exit_code = 3


class DimensionMismatch(EulerPathsError):
    exit_code = 4


class BudgetExceeded(EulerPathsError):
    exit_code = 5


class DegenerateNormalizer(EulerPathsError):
    exit_code = 6


class OutOfRange(EulerPathsError):
    exit_code = 7
