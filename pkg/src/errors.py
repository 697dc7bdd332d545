"""
Exception hierarchy for the planner
"""


class PlannerError(Exception):
    """Base class for every error raised by the planner library"""


class ConfigError(PlannerError):
    pass


class FormatError(PlannerError):
    """A network or scheme document could not be parsed"""


class NetworkError(PlannerError):
    """The RTT matrix violates the network model"""


class DimensionMismatch(NetworkError):
    pass


class AsymmetricRTT(NetworkError):
    def __init__(self, a: str, b: str, forward, backward):
        super().__init__(f"RTT between {a} and {b} is not symmetric: {forward} vs {backward}")
        self.pair = (a, b)


class NonzeroDiagonal(NetworkError):
    pass


class NegativeRTT(NetworkError):
    pass


class DuplicateNodeName(NetworkError):
    pass


class KOutOfRange(PlannerError):
    def __init__(self, k: int, n: int, message: str = ""):
        super().__init__(message or f"file count k={k} must satisfy 1 <= k <= n={n}")
        self.k = k
        self.n = n


class UnknownNode(PlannerError):
    pass


class TimeBudgetExceeded(PlannerError):
    """Exact coloring search ran out of node expansions"""


class BudgetExceeded(PlannerError):
    """Brute-force search space is larger than the configured budget"""


class FieldError(PlannerError):
    pass


class NotPrime(FieldError):
    pass


class FieldTooSmall(FieldError):
    pass


class RankDeficient(PlannerError):
    pass


class NotAProperColoring(PlannerError):
    pass


class WrongColorCount(PlannerError):
    pass


class MissingFileUndefined(PlannerError):
    pass


class InternalAssertionFailure(PlannerError):
    pass
