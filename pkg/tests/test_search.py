import itertools
from fractions import Fraction

import pytest

from reservelab.evaluation import replay
from reservelab.model import validate_instance
from reservelab.policies import PolicySpec, SoftScope
from reservelab.search import (
    SearchSpace,
    canonical_form,
    find_gap_violations,
    find_substitutes_violations,
    read_index,
    summarize_index,
    write_witnesses,
)

SCORES_85_100 = range(85, 101)


def _gap_space(**kwargs):
    params = dict(max_n=5, scores=SCORES_85_100, categories=("g", "OBC"),
                  max_capacity=2, max_quota=1, k_grid=(10,))
    params.update(kwargs)
    return SearchSpace(**params)


def test_policy_family():
    space = SearchSpace(
        max_n=1, scores=(1,), kinds=("hard", "soft", "elevated", "gap"),
        k_grid=(0, 10), d_grid=(5,), soft_scopes=("gc", "all"),
    )
    assert list(space.policies()) == [
        PolicySpec.hard(),
        PolicySpec.soft(SoftScope.GC_ONLY),
        PolicySpec.soft(SoftScope.EVERYONE),
        PolicySpec.elevated(0),
        PolicySpec.elevated(10),
        PolicySpec.gap(PolicySpec.elevated(0), 5),
        PolicySpec.gap(PolicySpec.elevated(10), 5),
    ]


def test_enumeration_counts_and_determinism():
    space = SearchSpace(max_n=1, scores=(1, 2), categories=("g", "OBC"), max_capacity=1)
    first = list(space.instances())
    # 2 scores x 2 labels x (capacity 0, capacity 1 open, capacity 1 reserved)
    assert len(first) == 12
    assert first == list(space.instances())
    assert len(set(first)) == len(first)


def test_enumeration_canonicalizes_ties():
    space = SearchSpace(max_n=2, min_n=2, scores=(5,), categories=("g", "OBC"),
                        distinct_scores=False, max_capacity=0)
    rosters = [tuple(sorted(c.value for c in i.memberships)[0] for i in inst.individuals)
               for inst in space.instances()]
    assert rosters == [("g", "g"), ("OBC", "g"), ("OBC", "OBC")]
    for inst in space.instances():
        assert canonical_form(inst) == inst


def test_sampling_is_keyed_by_seed_and_index():
    space = _gap_space(samples=30, seed=1234)
    again = _gap_space(samples=30, seed=1234)
    assert space.sample(7) == again.sample(7)
    drawn = list(space.instances())
    assert drawn == list(again.instances())
    assert len(drawn) == 30
    for inst in drawn:
        validate_instance(inst)


def test_smallest_gap_witness_has_two_individuals():
    w = next(find_gap_violations(_gap_space()))
    assert len(w.instance) == 2
    assert w.details["gap"] > 10
    assert replay(w)


def test_gap_witnesses_replay():
    witnesses = list(itertools.islice(find_gap_violations(_gap_space()), 50))
    assert len(witnesses) == 50
    assert all(replay(w) for w in witnesses)


def test_no_reserved_seats_no_gap():
    space = _gap_space(max_n=3, max_quota=0, k_grid=(0,), scores=(70, 85, 100))
    assert list(find_gap_violations(space)) == []


def test_included_example1_is_found(example1):
    space = SearchSpace(max_n=0, scores=(1,), include=(example1,))
    (w,) = list(find_gap_violations(space))
    assert w.instance == example1
    assert w.details["gap"] == 11
    assert replay(w)


def test_workers_merge_in_instance_order():
    space = _gap_space(max_n=3, scores=(80, 85, 95, 100))
    assert list(find_gap_violations(space, num_workers=2)) == list(find_gap_violations(space))


def test_substitutes_finder_on_example2(example2_arrival, gap10):
    space = SearchSpace(max_n=0, scores=(1,), include=(example2_arrival,))
    (w,) = list(find_substitutes_violations(space, [gap10]))
    assert w.details["subset"] == ("i1", "i2", "i3", "i4", "i5", "i6")
    assert w.details["newcomer"] == "i7"
    assert w.individuals == ("i6",)


def test_substitutes_finder_hard_family_is_empty():
    space = SearchSpace(max_n=3, scores=(90, 95, 100), categories=("g", "SC", "OBC"),
                        kinds=("hard",))
    assert list(find_substitutes_violations(space)) == []


def test_empty_space():
    space = SearchSpace(max_n=0, scores=(1,))
    assert list(space.instances()) == []
    assert list(find_substitutes_violations(space)) == []


def test_witness_corpus(tmp_path, example1, example2_arrival, gap10):
    space = SearchSpace(max_n=0, scores=(1,), include=(example1,))
    gap = list(find_gap_violations(space))
    subs = list(find_substitutes_violations(
        SearchSpace(max_n=0, scores=(1,), include=(example2_arrival,)), [gap10]))
    paths = write_witnesses(gap + subs, str(tmp_path / "run1"))
    assert len(paths) == 2
    rows = read_index(str(tmp_path / "run1" / "index.tsv"))
    assert [r["kind"] for r in rows] == ["gap", "substitutes"]
    assert len(rows[0]["instance_hash"]) == 40

    table = summarize_index([str(tmp_path / "run1")])
    assert "substitutes" in table
    assert "run1" in table


@pytest.mark.slow
def test_example1_configuration_is_enumerated(example1):
    space = SearchSpace(
        max_n=5, min_n=5, scores=(89, 98, 99, 100), categories=("g", "SC", "ST", "OBC"),
        distinct_scores=False, min_capacity=4, max_capacity=4, max_quota=1,
    )
    target = canonical_form(example1)
    found = [w for w in find_gap_violations(space) if w.instance == target]
    assert found
    assert found[0].details["gap"] == Fraction(11)
