import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple

from reservelab.errors import InstanceError, NegativeScore, UnknownCategory, UnknownIndividual

__all__ = [
    "Category",
    "RESERVE_CATEGORIES",
    "DEFAULT_PRECEDENCE",
    "Individual",
    "Instance",
    "id_key",
    "parse_category",
    "parse_score",
    "format_score",
]


class Category(str, Enum):
    SC = "SC"
    ST = "ST"
    OBC = "OBC"
    EWS = "EWS"
    # general category: an individual holding no reserve membership
    GENERAL = "g"
    # seat-side label of the unreserved positions, never a membership
    OPEN = "OPEN"

    def __str__(self):
        return self.value

    @property
    def is_reserve(self) -> bool:
        return self in RESERVE_CATEGORIES


RESERVE_CATEGORIES = (Category.SC, Category.ST, Category.OBC, Category.EWS)
DEFAULT_PRECEDENCE = (Category.OPEN,) + RESERVE_CATEGORIES

_CATEGORY_ALIASES = {
    "sc": Category.SC,
    "st": Category.ST,
    "obc": Category.OBC,
    "ews": Category.EWS,
    "g": Category.GENERAL,
    "gc": Category.GENERAL,
    "general": Category.GENERAL,
    "open": Category.OPEN,
}


def parse_category(value) -> Category:
    if isinstance(value, Category):
        return value
    try:
        return _CATEGORY_ALIASES[str(value).strip().lower()]
    except KeyError:
        raise UnknownCategory("unknown category label '{}'".format(value)) from None


def parse_score(value) -> Fraction:
    """
    Parse a merit score exactly. Accepts ints, Fractions, decimal strings
    ("89.5"), ratio strings ("179/2"); floats are read through their repr.
    """
    if isinstance(value, bool):
        raise InstanceError("a score cannot be a boolean, got {}".format(value))
    if isinstance(value, float):
        value = repr(value)
    try:
        score = Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise InstanceError("cannot parse score {!r}".format(value)) from e
    if score < 0:
        raise NegativeScore("score {} is negative".format(value))
    return score


def format_score(score: Fraction):
    """
    Inverse of :func:`parse_score` for serialization: ints stay ints,
    terminating decimals become decimal strings, anything else "p/q".
    """
    score = Fraction(score)
    if score.denominator == 1:
        return score.numerator
    den = score.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return "{}/{}".format(score.numerator, score.denominator)
    places = max(twos, fives)
    scaled = score * 10 ** places
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
    return "{}{}.{}".format(sign, digits[:-places], digits[-places:])


_DIGITS = re.compile(r"(\d+)")


def id_key(iid: str) -> Tuple:
    """
    Natural sort key for individual ids, so that "i2" sorts before "i10".
    """
    parts = _DIGITS.split(str(iid))
    return tuple(int(p) if k % 2 else p for k, p in enumerate(parts))


@dataclass(frozen=True)
class Individual:
    id: str
    memberships: FrozenSet[Category]
    score: Fraction

    @classmethod
    def create(cls, iid, categories, score) -> "Individual":
        if isinstance(categories, (str, Category)):
            categories = [categories]
        return cls(
            id=str(iid),
            memberships=frozenset(parse_category(c) for c in categories),
            score=parse_score(score),
        )

    def is_member(self, category: Category) -> bool:
        return category in self.memberships

    @property
    def is_general(self) -> bool:
        return self.memberships == frozenset([Category.GENERAL])

    def __repr__(self):
        labels = ",".join(sorted(c.value for c in self.memberships))
        return "{}({}, {})".format(self.id, labels, format_score(self.score))


@dataclass(frozen=True)
class Instance:
    """
    A single institution: roster, capacity, reserved quotas and the order in
    which seat categories are processed. Construct through
    :meth:`Instance.create` and check with
    :func:`reservelab.model.validate_instance`.

    ``reserved`` is stored as sorted (category, quota) pairs so that the
    instance stays immutable; read it back through :attr:`quotas`.
    """

    individuals: Tuple[Individual, ...]
    capacity: int
    reserved: Tuple[Tuple[Category, int], ...]
    precedence: Tuple[Category, ...] = DEFAULT_PRECEDENCE
    distinct_scores: bool = False
    # policy configuration from the instance file, if any
    policy: Optional[object] = field(default=None, compare=False)

    @classmethod
    def create(
        cls,
        individuals: Iterable[Individual],
        capacity: int,
        reserved: Mapping = None,
        precedence: Iterable = None,
        distinct_scores: bool = False,
        policy=None,
    ) -> "Instance":
        reserved = reserved or {}
        pairs = {}
        for c, n in reserved.items():
            pairs[parse_category(c)] = int(n)
        if precedence is None:
            precedence = DEFAULT_PRECEDENCE
        return cls(
            individuals=tuple(individuals),
            capacity=int(capacity),
            reserved=tuple(sorted(pairs.items(), key=lambda kv: kv[0].value)),
            precedence=tuple(parse_category(c) for c in precedence),
            distinct_scores=bool(distinct_scores),
            policy=policy,
        )

    @property
    def quotas(self) -> Dict[Category, int]:
        return dict(self.reserved)

    def quota(self, category: Category) -> int:
        if category == Category.OPEN:
            return self.open_quota
        return self.quotas.get(category, 0)

    @property
    def open_quota(self) -> int:
        return self.capacity - sum(n for _, n in self.reserved)

    @property
    def ids(self) -> Tuple[str, ...]:
        return tuple(i.id for i in self.individuals)

    def get(self, iid: str) -> Individual:
        for i in self.individuals:
            if i.id == iid:
                return i
        raise UnknownIndividual("no individual '{}' in the instance".format(iid))

    def __contains__(self, iid) -> bool:
        return any(i.id == iid for i in self.individuals)

    def __len__(self):
        return len(self.individuals)

    def restrict(self, ids: Iterable[str]) -> "Instance":
        """
        The same institution facing only the individuals in ``ids``.
        """
        keep = set(ids)
        return Instance(
            individuals=tuple(i for i in self.individuals if i.id in keep),
            capacity=self.capacity,
            reserved=self.reserved,
            precedence=self.precedence,
            distinct_scores=self.distinct_scores,
            policy=self.policy,
        )

    def replace(self, **changes) -> "Instance":
        fields = dict(
            individuals=self.individuals,
            capacity=self.capacity,
            reserved=self.reserved,
            precedence=self.precedence,
            distinct_scores=self.distinct_scores,
            policy=self.policy,
        )
        fields.update(changes)
        if isinstance(fields["reserved"], Mapping):
            fields["reserved"] = tuple(
                sorted(
                    ((parse_category(c), int(n)) for c, n in fields["reserved"].items()),
                    key=lambda kv: kv[0].value,
                )
            )
        return Instance(**fields)
