from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

from reservelab.errors import PolicyError
from reservelab.model import (
    Category,
    Individual,
    Instance,
    format_score,
    id_key,
    validate_instance,
)
from reservelab.policies import PolicyKind, PolicySpec, build_category_order

__all__ = [
    "StageRecord",
    "Assignment",
    "ChoiceRule",
    "allocate",
    "choose",
    "gap_constrained_choose",
    "add_individual",
    "remove_individual",
]


@dataclass(frozen=True)
class StageRecord:
    category: Category
    quota: int
    seated: Tuple[str, ...]
    cutoff: Optional[Fraction]
    floor: Optional[Fraction] = None

    def trace_line(self) -> str:
        return "stage {:<4} quota {}: seated [{}] cutoff {} floor {}".format(
            self.category.value,
            self.quota,
            ", ".join(self.seated),
            "-" if self.cutoff is None else format_score(self.cutoff),
            "-" if self.floor is None else format_score(self.floor),
        )


@dataclass(frozen=True)
class Assignment:
    """
    Outcome of a choice rule: who sits where, who is rejected, and how many
    seats of each category stay empty.
    """

    seats: Dict[str, Category]
    rejected: FrozenSet[str]
    vacancies: Dict[Category, int]
    policy: Optional[PolicySpec] = None
    trace: Tuple[StageRecord, ...] = field(default=(), compare=False)

    @property
    def chosen(self) -> FrozenSet[str]:
        return frozenset(self.seats)

    def seated_at(self, category: Category) -> Tuple[str, ...]:
        return tuple(sorted((i for i, c in self.seats.items() if c == category), key=id_key))

    def is_seated(self, iid: str) -> bool:
        return iid in self.seats


def _fill(inst: Instance, policy: PolicySpec, gap_bound, hooks) -> Assignment:
    scores = {i.id: i.score for i in inst.individuals}
    target = policy.seat_policy.category
    assigned: Dict[str, Category] = {}
    records = []
    open_cutoff = None

    for c in inst.precedence:
        quota = inst.quota(c)
        floor = None
        # the floor only exists once the open stage has produced a cutoff
        if gap_bound is not None and c == target and open_cutoff is not None:
            floor = open_cutoff - gap_bound
        for h in hooks:
            h.before_stage(c, quota, floor)

        seated = []
        if quota > 0:
            order = build_category_order(inst, c, policy)
            for iid in order.acceptable:
                if len(seated) == quota:
                    break
                if iid in assigned:
                    continue
                if floor is not None and scores[iid] < floor:
                    continue
                assigned[iid] = c
                seated.append(iid)
        assert len(seated) <= quota, "stage {} seated {} > quota {}".format(c, len(seated), quota)

        cutoff = min(scores[i] for i in seated) if seated else None
        if c == Category.OPEN:
            open_cutoff = cutoff
        record = StageRecord(c, quota, tuple(seated), cutoff, floor)
        records.append(record)
        for h in hooks:
            h.after_stage(record)

    rejected = frozenset(i for i in scores if i not in assigned)
    assert len(assigned) + len(rejected) == len(inst.individuals)
    vacancies = {r.category: r.quota - len(r.seated) for r in records}
    return Assignment(
        seats=assigned,
        rejected=rejected,
        vacancies=vacancies,
        policy=policy if gap_bound is None else PolicySpec.gap(policy, gap_bound),
        trace=tuple(records),
    )


def choose(inst: Instance, policy: PolicySpec, hooks: Iterable = ()) -> Assignment:
    """
    Fill seat categories one after another in `inst.precedence`. Each stage
    takes, in its priority order, the best acceptable individuals not seated
    by an earlier stage, up to its quota. A reserve member seated at OPEN
    does not use up a reserved seat.

    Args:
        inst (Instance): a validated instance
        policy (PolicySpec): hard, soft or elevated
        hooks (list[StageHook]): called around every stage
    """
    if policy.kind == PolicyKind.GAP:
        raise PolicyError("choose() takes a hard, soft or elevated policy; "
                          "use gap_constrained_choose() for gap policies")
    return _fill(inst, policy, None, list(hooks))


def gap_constrained_choose(
    inst: Instance, base: PolicySpec, bound, hooks: Iterable = ()
) -> Assignment:
    """
    Like :func:`choose`, except that seats of the base policy's category only
    admit individuals whose raw score is at least (open cutoff - bound). The
    open cutoff is taken once, right after the OPEN stage; if OPEN seats no
    one (or comes later in the precedence) no floor applies.
    A bound of None means no bound at all.
    """
    if base.kind == PolicyKind.GAP:
        raise PolicyError("base policy of gap_constrained_choose cannot be a gap policy")
    if bound is None:
        return _fill(inst, base, None, list(hooks))
    bound = Fraction(bound)
    if bound < 0:
        raise PolicyError("gap bound must be non-negative, got {}".format(bound))
    return _fill(inst, base, bound, list(hooks))


def allocate(inst: Instance, policy: PolicySpec, hooks: Iterable = ()) -> Assignment:
    if policy.kind == PolicyKind.GAP:
        return gap_constrained_choose(inst, policy.base, policy.gap_bound, hooks)
    return choose(inst, policy, hooks)


@dataclass(frozen=True)
class ChoiceRule:
    """
    A choice rule as a picklable callable: instance -> Assignment.
    """

    policy: PolicySpec

    def __call__(self, inst: Instance) -> Assignment:
        return allocate(inst, self.policy)

    def chosen(self, inst: Instance) -> FrozenSet[str]:
        return self(inst).chosen

    def __str__(self):
        return self.policy.describe()


def add_individual(inst: Instance, individual: Individual) -> Instance:
    """
    A new validated instance with `individual` appended to the roster.
    Raises DuplicateId if the id is taken.
    """
    return validate_instance(inst.replace(individuals=inst.individuals + (individual,)))


def remove_individual(inst: Instance, iid: str) -> Instance:
    inst.get(iid)
    return inst.replace(individuals=tuple(i for i in inst.individuals if i.id != iid))
