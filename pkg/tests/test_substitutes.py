import itertools
import os

import pytest

from reservelab.engine import ChoiceRule
from reservelab.errors import UniverseTooLarge
from reservelab.evaluation import (
    check_expansions,
    check_substitutes,
    default_max_universe,
    iter_substitutes_violations,
    replay,
)
from reservelab.model import id_key
from reservelab.policies import PolicySpec, SoftScope
from reservelab.search import SearchSpace, sweep_substitutes_violations

CLEAN_RULES = [
    PolicySpec.hard(),
    PolicySpec.soft(SoftScope.GC_ONLY),
    PolicySpec.soft(SoftScope.EVERYONE),
    PolicySpec.elevated(0),
    PolicySpec.elevated(5),
    PolicySpec.elevated(10),
]


def test_newcomer_helps_i6(example2_arrival, gap10):
    w = check_substitutes(ChoiceRule(gap10), example2_arrival)
    assert w is not None
    assert w.details["subset"] == ("i1", "i2", "i3", "i4", "i5", "i6")
    assert w.details["newcomer"] == "i7"
    assert w.individuals == ("i6",)
    assert w.instance == example2_arrival
    assert replay(w)


def test_every_reported_witness_replays(example2_arrival, gap10):
    witnesses = list(itertools.islice(iter_substitutes_violations(gap10, example2_arrival), 25))
    assert witnesses
    assert all(replay(w) for w in witnesses)
    keys = [
        (tuple(map(id_key, w.details["subset"])), id_key(w.details["newcomer"]), id_key(w.individuals[0]))
        for w in witnesses
    ]
    assert keys == sorted(keys)


def test_first_witness_has_the_smallest_subset(build, gap10):
    # larger subsets of this universe also violate, the reported one is smallest in id order
    universe = build(
        [
            ("i1", "g", 102),
            ("i2", "g", 100),
            ("i3", "g", 98),
            ("i4", "OBC", 91),
            ("i5", "OBC", 90),
            ("i6", "g", 88),
        ],
        capacity=3,
        reserved={"OBC": 2},
    )
    w = check_substitutes(gap10, universe)
    assert w.details["subset"] == ("i2", "i3", "i4", "i5")
    assert w.details["newcomer"] == "i1"
    assert w.individuals == ("i3",)
    assert replay(w)
    assert w == check_substitutes(gap10, universe, num_workers=2)


def test_hard_rule_is_substitutable_on_example2(example2_arrival):
    assert check_substitutes(PolicySpec.hard(), example2_arrival) is None


def test_singleton_universe(example2_arrival, gap10):
    assert check_substitutes(gap10, example2_arrival.restrict(["i6"])) is None


def test_universe_bound(example2_arrival, gap10, monkeypatch):
    with pytest.raises(UniverseTooLarge):
        check_substitutes(gap10, example2_arrival, max_n=6)
    monkeypatch.setenv("RESERVE_LAB_MAX_N", "5")
    assert default_max_universe() == 5
    with pytest.raises(UniverseTooLarge):
        check_substitutes(gap10, example2_arrival)


def test_workers_report_the_same_witness(example2_arrival, gap10):
    sequential = check_substitutes(gap10, example2_arrival)
    parallel = check_substitutes(gap10, example2_arrival, num_workers=2)
    assert parallel == sequential


@pytest.mark.parametrize("policy", CLEAN_RULES, ids=lambda p: p.describe())
def test_clean_rules_on_small_family(policy):
    # universes of three individuals; smaller rosters are subsets of these
    space = SearchSpace(
        max_n=3, min_n=3, scores=(1, 2, 3, 4), categories=("g", "SC", "OBC"),
        max_capacity=3, max_quota=3,
    )
    for universe in space.instances():
        assert check_substitutes(policy, universe) is None, universe


def test_sweep_agrees_with_universe_checks(gap10):
    # every roster of at most five individuals is a subset of some universe of five
    space = SearchSpace(
        max_n=5, min_n=5, scores=(102, 100, 98, 91, 90), categories=("g", "OBC"),
        min_capacity=3, max_capacity=3, max_quota=2,
    )
    rules = [PolicySpec.hard(), PolicySpec.elevated(10), gap10]
    swept = {
        (w.policy.describe(), w.instance.reserved): w
        for w in sweep_substitutes_violations(space, rules)
    }
    assert any(key[0] == gap10.describe() for key in swept)
    for policy in rules:
        for capacity, reserved in space.configurations():
            universes = [space.build(r, capacity, reserved) for r in space.rosters()]
            failing = any(check_substitutes(policy, u) is not None for u in universes)
            w = swept.get((policy.describe(), universes[0].reserved))
            assert failing == (w is not None), (policy.describe(), reserved)
            if w is not None:
                assert replay(w)
                assert w == check_expansions(policy, w.instance)


def test_sweep_workers_and_included_universes(example2_arrival):
    space = SearchSpace(
        max_n=4, scores=(100, 95, 90, 85), max_capacity=3, max_quota=2,
        kinds=("gap", "elevated"), include=(example2_arrival,),
    )
    sequential = list(sweep_substitutes_violations(space))
    assert sequential[0].instance == example2_arrival
    assert sequential[0].individuals == ("i6",)
    assert list(sweep_substitutes_violations(space, num_workers=2)) == sequential


def test_sweep_cannot_sample():
    space = SearchSpace(max_n=3, scores=(100, 95, 90), samples=5, seed=1)
    with pytest.raises(ValueError):
        next(sweep_substitutes_violations(space))


@pytest.mark.slow
def test_clean_rules_on_full_family():
    # universes of six over scores 1..8: every roster of up to six individuals
    space = SearchSpace(
        max_n=6, min_n=6, scores=range(1, 9), categories=("g", "SC", "OBC"),
        max_capacity=4, max_quota=4,
    )
    found = list(sweep_substitutes_violations(space, CLEAN_RULES, num_workers=os.cpu_count() or 1))
    assert found == [], [w.summary() for w in found]
