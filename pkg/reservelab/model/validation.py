from collections import Counter
from typing import FrozenSet

from reservelab.errors import (
    BadPrecedence,
    DuplicateId,
    DuplicateScore,
    MalformedMembership,
    NegativeQuota,
    NegativeScore,
    QuotaOverflow,
    UnknownCategory,
)
from .structures import RESERVE_CATEGORIES, Category, Individual, Instance

__all__ = ["validate_individual", "validate_instance", "members_of"]


def validate_individual(individual: Individual) -> Individual:
    if individual.score < 0:
        raise NegativeScore(
            "individual '{}' has negative score {}".format(individual.id, individual.score)
        )
    labels = individual.memberships
    if not labels:
        raise MalformedMembership(
            "individual '{}' declares no category".format(individual.id)
        )
    if Category.OPEN in labels:
        raise MalformedMembership(
            "individual '{}' declares OPEN, which is a seat label only".format(individual.id)
        )
    if Category.GENERAL in labels and len(labels) > 1:
        raise MalformedMembership(
            "individual '{}' mixes g with reserve labels {}".format(
                individual.id, sorted(c.value for c in labels if c != Category.GENERAL)
            )
        )
    return individual


def validate_instance(raw: Instance) -> Instance:
    """
    Check every roster and quota invariant of an instance.

    Returns:
        the instance, unchanged, if it is valid.

    Raises:
        QuotaOverflow, NegativeQuota, DuplicateId, DuplicateScore,
        MalformedMembership, NegativeScore, BadPrecedence, UnknownCategory
    """
    if raw.capacity < 0:
        raise NegativeQuota("capacity {} is negative".format(raw.capacity))
    for c, n in raw.reserved:
        if c not in RESERVE_CATEGORIES:
            raise UnknownCategory("'{}' cannot carry a reserved quota".format(c))
        if n < 0:
            raise NegativeQuota("quota of {} is negative ({})".format(c, n))
    total = sum(n for _, n in raw.reserved)
    if total > raw.capacity:
        raise QuotaOverflow(
            "reserved quotas sum to {} but capacity is {}".format(total, raw.capacity)
        )

    counts = Counter(i.id for i in raw.individuals)
    dups = sorted(iid for iid, n in counts.items() if n > 1)
    if dups:
        raise DuplicateId("duplicate individual ids: {}".format(", ".join(dups)))
    for i in raw.individuals:
        validate_individual(i)
    if raw.distinct_scores:
        scores = Counter(i.score for i in raw.individuals)
        tied = sorted(s for s, n in scores.items() if n > 1)
        if tied:
            raise DuplicateScore(
                "distinct scores demanded but {} is shared".format(tied[0])
            )

    prec = raw.precedence
    if len(set(prec)) != len(prec):
        raise BadPrecedence("precedence lists a category twice: {}".format(
            [c.value for c in prec]))
    if Category.OPEN not in prec:
        raise BadPrecedence("precedence must contain OPEN")
    if Category.GENERAL in prec:
        raise BadPrecedence("g is not a seat category")
    missing = [c.value for c, n in raw.reserved if n > 0 and c not in prec]
    if missing:
        raise BadPrecedence(
            "categories with reserved seats missing from precedence: {}".format(missing)
        )
    return raw


def members_of(inst: Instance, c: Category) -> FrozenSet[Individual]:
    """
    The vertical category-c members; for g, everyone outside every reserve
    category.
    """
    if c == Category.OPEN:
        raise UnknownCategory("OPEN is a seat label, it has no members")
    if c == Category.GENERAL:
        return frozenset(
            i for i in inst.individuals
            if not any(r in i.memberships for r in RESERVE_CATEGORIES)
        )
    return frozenset(i for i in inst.individuals if c in i.memberships)
