"""
Priority orders of seat categories over individuals.

A :class:`PriorityOrder` ranks individual ids best-first; ``vacancy_rank``
is the position of the "leave the seat vacant" option, so only the ids
before it are acceptable for the seat category.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple

from reservelab.errors import IntransitiveTie, PolicyError, UnknownCategory
from reservelab.model import Category, Individual, Instance, id_key
from .spec import SoftScope

__all__ = [
    "PriorityOrder",
    "merit_key",
    "baseline_order",
    "hard_order",
    "soft_order",
    "elevated_order",
    "elevated_precedes",
]


@dataclass(frozen=True)
class PriorityOrder:
    ranked: Tuple[str, ...]
    vacancy_rank: int

    def __post_init__(self):
        assert len(set(self.ranked)) == len(self.ranked), "an id is ranked twice: {}".format(
            self.ranked
        )
        assert 0 <= self.vacancy_rank <= len(self.ranked), self.vacancy_rank

    @property
    def acceptable(self) -> Tuple[str, ...]:
        return self.ranked[: self.vacancy_rank]

    def is_acceptable(self, iid: str) -> bool:
        return iid in self.acceptable

    def rank(self, iid: str) -> Optional[int]:
        try:
            return self.ranked.index(iid)
        except ValueError:
            return None

    def restricted(self, ids: Iterable[str]) -> "PriorityOrder":
        """
        The same order over a subset of ids (the vacancy option keeps its place).
        """
        keep = set(ids)
        acc = tuple(i for i in self.acceptable if i in keep)
        rest = tuple(i for i in self.ranked[self.vacancy_rank:] if i in keep)
        return PriorityOrder(acc + rest, len(acc))

    def __str__(self):
        return " > ".join(list(self.acceptable) + ["{}"] + list(self.ranked[self.vacancy_rank:]))


def merit_key(individual: Individual):
    # higher score first, ties by ascending (natural) id
    return (-individual.score, id_key(individual.id))


def _merit_ranked(individuals) -> Tuple[str, ...]:
    return tuple(i.id for i in sorted(individuals, key=merit_key))


def _check_reserve(c: Category):
    if not c.is_reserve:
        raise UnknownCategory("{} is not a reserve category".format(c))


def baseline_order(inst: Instance) -> PriorityOrder:
    """
    Everyone by descending score; everyone is eligible for open seats.
    """
    ranked = _merit_ranked(inst.individuals)
    return PriorityOrder(ranked, len(ranked))


def hard_order(inst: Instance, c: Category) -> PriorityOrder:
    """
    Members of c by descending score, then vacancy: seats never transfer.
    """
    _check_reserve(c)
    ranked = _merit_ranked(i for i in inst.individuals if c in i.memberships)
    return PriorityOrder(ranked, len(ranked))


def soft_order(inst: Instance, c: Category, scope: SoftScope = SoftScope.GC_ONLY) -> PriorityOrder:
    """
    Members of c by descending score, then the de-reservation pool (general
    category only, or every non-member) by descending score, then vacancy.
    """
    _check_reserve(c)
    scope = SoftScope(scope)
    members = [i for i in inst.individuals if c in i.memberships]
    if scope == SoftScope.GC_ONLY:
        pool = [i for i in inst.individuals if i.is_general]
    else:
        pool = [i for i in inst.individuals if c not in i.memberships]
    ranked = _merit_ranked(members) + _merit_ranked(pool)
    return PriorityOrder(ranked, len(ranked))


def elevated_precedes(c: Category, k, i: Individual, j: Individual) -> bool:
    """
    Pairwise definition of the score-elevated order for category c with boost k:
    members among themselves and non-members among themselves by score, a
    member i above a non-member j iff score(i) + k > score(j). Equal scores
    on the same side fall back to the id tie-break.
    """
    if i.id == j.id:
        return False
    i_member = c in i.memberships
    j_member = c in j.memberships
    if i_member == j_member:
        return merit_key(i) < merit_key(j)
    if i_member:
        return i.score + k > j.score
    return not (j.score + k > i.score)


def elevated_order(inst: Instance, c: Category, k) -> PriorityOrder:
    """
    Score-elevated order of category c: everyone eligible, sorted on
    (effective score, side, id) where members carry score + k and, at equal
    effective score, the non-member comes first. The sorted result is
    checked against :func:`elevated_precedes` pair by pair.
    """
    _check_reserve(c)
    k = Fraction(k)
    if k < 0:
        raise PolicyError("boost k must be non-negative, got {}".format(k))

    def key(i: Individual):
        member = c in i.memberships
        effective = i.score + k if member else i.score
        return (-effective, 1 if member else 0, id_key(i.id))

    ordered = sorted(inst.individuals, key=key)
    for a, b in zip(ordered, ordered[1:]):
        if not elevated_precedes(c, k, a, b):
            raise IntransitiveTie(
                "elevated order for {} with k={} places {} above {}".format(c, k, a, b)
            )
    ranked = tuple(i.id for i in ordered)
    return PriorityOrder(ranked, len(ranked))
