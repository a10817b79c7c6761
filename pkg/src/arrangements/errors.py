"""Exception hierarchy.

Two families matter to callers: ``InputError`` for bad input (the CLI maps it
to exit status 2) and ``InternalInconsistency`` for violated invariants that
are provably impossible on correct code (exit status 1).
"""


class ArrangementError(Exception):
    pass


class InputError(ArrangementError, ValueError):
    pass


class InternalInconsistency(ArrangementError, AssertionError):
    pass


class EmptyIntersection(InputError):
    pass


class SubspaceInsideHyperplane(InputError):
    pass


class PointOnLocalization(InputError):
    pass


class FlatNotModular(InputError):
    pass


class IdentificationInvalid(InputError):
    pass


class WrongRank(InputError):
    pass


class DepthExceeded(InputError):
    pass


class NegativeCoefficient(InternalInconsistency):
    pass


class InexactDivision(InternalInconsistency):
    pass


class NotGeometric(InternalInconsistency):
    pass


class TheoremViolated(InternalInconsistency):
    pass


class CriterionLatticeMismatch(InternalInconsistency):
    pass


class RealizationMismatch(InternalInconsistency):
    pass


class Contradiction(InternalInconsistency):
    def __init__(self, message, first=None, second=None):
        super().__init__(message)
        self.first = first
        self.second = second
