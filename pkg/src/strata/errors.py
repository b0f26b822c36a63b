"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line front end can map
it without a lookup table: 1 for malformed input, 2 for well-formed input
outside an operation's domain, 3 for resource limits.
"""


class StrataError(Exception):
    exit_code = 2


class UsageError(StrataError):
    exit_code = 1


class ResourceError(StrataError):
    exit_code = 3


# input parsing
class Empty(UsageError):
    pass


class NotABijection(UsageError):
    pass


class OutOfRange(UsageError):
    pass


class GenusTooSmall(UsageError):
    pass


# permutations
class Reducible(StrataError):
    pass


class Degenerate(StrataError):
    pass


class NotStandard(StrataError):
    pass


class LetterCountMismatch(StrataError):
    pass


class MemoryCapExceeded(ResourceError):
    pass


# interval exchanges
class NonPositiveLength(StrataError):
    pass


class PartitionAuditFailed(StrataError):
    pass


class OutOfDomain(StrataError):
    pass


class HitSingularOrbit(StrataError):
    def __init__(self, step, point):
        super().__init__(f"orbit hits a discontinuity at step {step} (x={point})")
        self.step = step
        self.point = point


class TieAtStep(StrataError):
    pass


# surfaces
class Disconnected(StrataError):
    pass


class PathThroughConePoint(StrataError):
    pass


class NotClosed(StrataError):
    pass


class OddDegreePresent(StrataError):
    pass


class RadicalObstruction(StrataError):
    pass


# diagrams
class InvalidDiagram(StrataError):
    pass


class NotAlternating(InvalidDiagram):
    pass


class SignMismatchInPairing(InvalidDiagram):
    pass


class UnbalancedBoundary(InvalidDiagram):
    pass


class MultipleVertices(StrataError):
    pass


class SameSector(StrataError):
    pass


class NotSimplePair(StrataError):
    pass


class LoopEdge(StrataError):
    pass


class PairEquationViolated(StrataError):
    pass


# classification
class BadProfile(StrataError):
    pass


class BadOrders(StrataError):
    pass


class PairParityUndefinedForEvenG(StrataError):
    pass


class DivisorMismatch(StrataError):
    pass


class InternalContradiction(StrataError):
    pass


class Undecided(StrataError):
    pass
