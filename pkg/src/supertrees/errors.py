"""Exception hierarchy shared by all modules."""


class SupertreeError(Exception):
    """Base class for every error raised by this package."""


class NonUniformEdge(SupertreeError, ValueError):
    pass


class DuplicateEdge(SupertreeError, ValueError):
    pass


class VertexOutOfRange(SupertreeError, ValueError):
    pass


class Disconnected(SupertreeError, ValueError):
    pass


class HasCycle(SupertreeError, ValueError):
    pass


class IntersectionTooLarge(SupertreeError, ValueError):
    pass


class DimensionMismatch(SupertreeError, ValueError):
    pass


class NotTwoUniform(SupertreeError, ValueError):
    pass


class NoConvergence(SupertreeError, RuntimeError):
    """Iteration cap reached; ``lower``/``upper`` hold the last bracket."""

    def __init__(self, message, lower=None, upper=None, iterations=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.iterations = iterations


class BadParams(SupertreeError, ValueError):
    pass


class InputNotATree(SupertreeError, ValueError):
    pass


class NotRealizable(SupertreeError, ValueError):
    pass


class UNotOutsideEdge(SupertreeError, ValueError):
    pass


class VNotInEdge(SupertreeError, ValueError):
    pass


class ResultHasDuplicateEdge(SupertreeError, ValueError):
    pass


class EdgeIsPendent(SupertreeError, ValueError):
    pass


class UNotInEdge(SupertreeError, ValueError):
    pass


class NotBranchEdge(SupertreeError, ValueError):
    pass


class EdgesNotDisjoint(SupertreeError, ValueError):
    pass


class BadSubsetSizes(SupertreeError, ValueError):
    pass


class NotAGraftConfiguration(SupertreeError, ValueError):
    pass


class TooLarge(SupertreeError, ValueError):
    pass


class UnknownClaim(SupertreeError, KeyError):
    pass


class ParseError(SupertreeError, ValueError):
    pass


class IoError(SupertreeError, OSError):
    pass
