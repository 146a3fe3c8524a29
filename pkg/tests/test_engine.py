import pickle

import numpy as np
import pytest

from reservelab.engine import (
    ChoiceRule,
    StageHook,
    add_individual,
    allocate,
    choose,
    gap_constrained_choose,
    remove_individual,
)
from reservelab.errors import DuplicateId, PolicyError, UnknownIndividual
from reservelab.evaluation import check_fairness, check_nonwaste
from reservelab.model import Category, Individual, Instance
from reservelab.policies import PolicySpec, SoftScope

OPEN, SC, ST, OBC = Category.OPEN, Category.SC, Category.ST, Category.OBC


def _record(a, category):
    (record,) = [r for r in a.trace if r.category == category]
    return record


def test_example1_elevated(example1, elevated10):
    a = choose(example1, elevated10)
    assert a.seats == {"i1": OPEN, "i2": SC, "i3": ST, "i5": OBC}
    assert a.rejected == {"i4"}
    assert all(n == 0 for n in a.vacancies.values())


@pytest.mark.parametrize("policy", [PolicySpec.hard(), PolicySpec.soft()])
def test_example1_other_policies(example1, policy):
    assert choose(example1, policy).chosen == {"i1", "i2", "i3", "i5"}


def test_example2_before_arrival(example2, elevated10):
    a = gap_constrained_choose(example2, elevated10, 10)
    assert a.seats == {"i1": OPEN, "i2": SC, "i3": ST, "i4": OBC, "i5": OBC}
    assert a.rejected == {"i6"}
    assert _record(a, OBC).floor == 90
    assert _record(a, OBC).cutoff == 90


def test_example2_after_arrival(example2_arrival, elevated10):
    a = gap_constrained_choose(example2_arrival, elevated10, 10)
    assert a.seats == {"i7": OPEN, "i2": SC, "i3": ST, "i1": OBC, "i6": OBC}
    assert a.rejected == {"i4", "i5"}
    assert _record(a, OBC).floor == 92
    assert a.seated_at(OBC) == ("i1", "i6")


def test_allocate_dispatches_on_kind(example2_arrival, gap10, elevated10):
    assert allocate(example2_arrival, gap10) == gap_constrained_choose(
        example2_arrival, elevated10, 10
    )
    assert allocate(example2_arrival, gap10).policy == gap10
    with pytest.raises(PolicyError):
        choose(example2_arrival, gap10)


def test_no_bound_is_the_base_rule(example2_arrival, elevated10):
    assert gap_constrained_choose(example2_arrival, elevated10, None) == choose(
        example2_arrival, elevated10
    )


def test_over_and_above(build):
    # i1 wins the open seat and leaves the SC seat to i2
    inst = build([("i1", "SC", 100), ("i2", "SC", 90), ("i3", "g", 80)], 2, {"SC": 1})
    a = choose(inst, PolicySpec.hard())
    assert a.seats == {"i1": OPEN, "i2": SC}


def test_hard_seat_stays_vacant_soft_reverts(build):
    inst = build([("i1", "g", 100), ("i2", "g", 90)], 2, {"OBC": 1})
    hard = choose(inst, PolicySpec.hard())
    assert hard.vacancies[OBC] == 1
    assert hard.rejected == {"i2"}
    soft = choose(inst, PolicySpec.soft(SoftScope.GC_ONLY))
    assert soft.seats == {"i1": OPEN, "i2": OBC}


def test_soft_scope_everyone(build):
    inst = build([("i1", "g", 100), ("i2", "SC", 90)], 2, {"OBC": 1})
    assert choose(inst, PolicySpec.soft(SoftScope.GC_ONLY)).rejected == {"i2"}
    assert choose(inst, PolicySpec.soft(SoftScope.EVERYONE)).seats["i2"] == OBC


def test_no_floor_when_open_comes_later(example2_arrival, elevated10):
    inst = example2_arrival.replace(precedence=(SC, ST, OBC, OPEN, Category.EWS))
    a = gap_constrained_choose(inst, elevated10, 10)
    assert _record(a, OBC).floor is None


def test_no_floor_when_open_seats_nobody(build, elevated10):
    inst = build([("i1", "OBC", 50)], 1, {"OBC": 1})
    a = gap_constrained_choose(inst, elevated10, 0)
    assert a.seats == {"i1": OBC}


def test_stage_hooks_follow_precedence(example1, elevated10):
    seen = []

    class Recorder(StageHook):
        def before_stage(self, category, quota, floor):
            seen.append(("before", category, quota))

        def after_stage(self, record):
            seen.append(("after", record.category, len(record.seated)))

    choose(example1, elevated10, hooks=[Recorder()])
    assert [s[1] for s in seen if s[0] == "before"] == list(example1.precedence)
    assert ("after", OBC, 1) in seen


def test_add_then_remove_round_trip(example2, example2_arrival):
    added = add_individual(example2, Individual.create("i7", "g", 102))
    assert added == example2_arrival
    assert remove_individual(added, "i7") == example2
    with pytest.raises(DuplicateId):
        add_individual(example2, Individual.create("i1", "g", 50))
    with pytest.raises(UnknownIndividual):
        remove_individual(example2, "i9")


def test_choice_rule_pickles(example2_arrival, gap10):
    rule = ChoiceRule(gap10)
    again = pickle.loads(pickle.dumps(rule))
    assert again == rule
    assert again.chosen(example2_arrival) == {"i1", "i2", "i3", "i6", "i7"}


RANDOM_POLICIES = [
    PolicySpec.hard(),
    PolicySpec.soft(SoftScope.GC_ONLY),
    PolicySpec.soft(SoftScope.EVERYONE),
    PolicySpec.elevated(5),
    PolicySpec.gap(PolicySpec.elevated(5), 3),
]


def _random_instances(seed, count=300):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(0, 8))
        individuals = [
            Individual.create("i{}".format(k + 1), str(rng.choice(["g", "SC", "OBC"])),
                              int(rng.integers(80, 100)))
            for k in range(n)
        ]
        q_sc, q_obc = (int(x) for x in rng.integers(0, 3, size=2))
        yield Instance.create(individuals, q_sc + q_obc + int(rng.integers(0, 3)),
                              {"SC": q_sc, "OBC": q_obc})


@pytest.mark.parametrize("policy", RANDOM_POLICIES, ids=lambda p: p.describe())
def test_assignment_partitions_roster(policy):
    for inst in _random_instances(11):
        a = allocate(inst, policy)
        assert set(a.seats) | a.rejected == set(inst.ids)
        assert not set(a.seats) & a.rejected
        for c in inst.precedence:
            assert len(a.seated_at(c)) + a.vacancies[c] == inst.quota(c)


@pytest.mark.parametrize("policy", RANDOM_POLICIES, ids=lambda p: p.describe())
def test_random_assignments_are_fair_and_waste_free(policy):
    for inst in _random_instances(23):
        a = allocate(inst, policy)
        assert check_fairness(inst, a) is None, inst
        assert check_nonwaste(inst, a, policy) is None, inst


@pytest.mark.parametrize("policy", RANDOM_POLICIES, ids=lambda p: p.describe())
def test_open_seat_holders_keep_no_reserve_seat(policy):
    # dropping the reserve label of anyone seated on merit changes nothing
    for inst in _random_instances(31):
        a = allocate(inst, policy)
        for iid in a.seated_at(OPEN):
            i = inst.get(iid)
            general = Individual.create(iid, "g", i.score)
            roster = tuple(general if x.id == iid else x for x in inst.individuals)
            assert allocate(inst.replace(individuals=roster), policy).seats == a.seats


@pytest.mark.parametrize("policy", RANDOM_POLICIES, ids=lambda p: p.describe())
def test_allocation_ignores_roster_order(policy):
    rng = np.random.default_rng(41)
    for inst in _random_instances(37):
        a = allocate(inst, policy)
        assert allocate(inst, policy) == a
        shuffled = [inst.individuals[k] for k in rng.permutation(len(inst.individuals))]
        again = Instance.create(shuffled, inst.capacity, inst.quotas)
        assert allocate(again, policy).seats == a.seats
