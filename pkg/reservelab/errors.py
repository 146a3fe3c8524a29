"""
Exceptions raised by reservelab.

Validation failures derive from :class:`InstanceError`, which is also a
``ValueError`` so callers that only care about "bad input" can catch that.
"""

__all__ = [
    "ReserveLabError",
    "InstanceError",
    "QuotaOverflow",
    "NegativeQuota",
    "DuplicateId",
    "DuplicateScore",
    "NegativeScore",
    "MalformedMembership",
    "BadPrecedence",
    "UnknownCategory",
    "UnknownIndividual",
    "PolicyError",
    "IntransitiveTie",
    "ForeignAssignment",
    "UniverseTooLarge",
    "NonReplayingWitness",
]


class ReserveLabError(Exception):
    pass


class InstanceError(ReserveLabError, ValueError):
    """
    An instance (or a piece of it) breaks one of the roster/quota invariants.
    """


class QuotaOverflow(InstanceError):
    pass


class NegativeQuota(InstanceError):
    pass


class DuplicateId(InstanceError):
    pass


class DuplicateScore(InstanceError):
    pass


class NegativeScore(InstanceError):
    pass


class MalformedMembership(InstanceError):
    pass


class BadPrecedence(InstanceError):
    pass


class UnknownCategory(InstanceError):
    pass


class UnknownIndividual(InstanceError):
    pass


class PolicyError(ReserveLabError, ValueError):
    pass


class IntransitiveTie(ReserveLabError):
    """
    The score-elevated properties did not produce a strict total order.
    """


class ForeignAssignment(ReserveLabError, ValueError):
    pass


class UniverseTooLarge(ReserveLabError):
    def __init__(self, size, bound):
        super().__init__(
            "universe has {} individuals, the exhaustive check allows at most {}".format(
                size, bound
            )
        )
        self.size = size
        self.bound = bound


class NonReplayingWitness(ReserveLabError):
    pass
