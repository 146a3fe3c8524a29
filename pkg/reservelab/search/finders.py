import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import FrozenSet, Iterable, Iterator, List, Optional

from reservelab.engine.allocation import ChoiceRule, allocate
from reservelab.evaluation import (
    ViolationWitness,
    check_substitutes,
    cutoffs,
    gap_check,
    substitutes_witness,
)
from reservelab.model import Instance
from reservelab.policies import PolicyKind, PolicySpec
from .space import SearchSpace

__all__ = ["find_gap_violations", "find_substitutes_violations", "sweep_substitutes_violations"]

logger = logging.getLogger(__name__)

# instances handed to the worker pool at a time
_BATCH = 256


def _gap_bounds(space: SearchSpace, policy: PolicySpec):
    if policy.kind == PolicyKind.GAP:
        return (policy.gap_bound,)
    if policy.kind == PolicyKind.ELEVATED:
        return (policy.boost_k,)
    return space.d_grid


def _gap_witnesses(inst: Instance, space: SearchSpace, policies) -> List[ViolationWitness]:
    found = []
    for policy in policies:
        report = cutoffs(inst, allocate(inst, policy))
        for bound in _gap_bounds(space, policy):
            w = gap_check(report, bound)
            if w is not None:
                found.append(w)
    return found


def _substitutes_witnesses(inst: Instance, rules, max_n) -> List[ViolationWitness]:
    found = []
    for rule in rules:
        w = check_substitutes(rule, inst, max_n)
        if w is not None:
            found.append(w)
    return found


def _run(fn, instances: Iterable[Instance], args, num_workers: int) -> Iterator[ViolationWitness]:
    # results are merged in instance order whatever the number of workers
    count = 0
    if num_workers <= 1:
        for inst in instances:
            count += 1
            yield from fn(inst, *args)
    else:
        it = iter(instances)
        with ProcessPoolExecutor(max_workers=num_workers) as pool:
            while True:
                batch = list(itertools.islice(it, _BATCH))
                if not batch:
                    break
                count += len(batch)
                columns = [itertools.repeat(a, len(batch)) for a in args]
                for found in pool.map(fn, batch, *columns):
                    yield from found
    logger.info("Searched {} instances".format(count))


def find_gap_violations(space: SearchSpace, num_workers: int = 1) -> Iterator[ViolationWitness]:
    """
    Allocate every instance of `space` under every policy of its family and
    check the gap between the open cutoff and the target category's cutoff.

    The bound is k itself for an elevated policy, the policy's own bound for
    a gap policy, and every bound of ``space.d_grid`` otherwise.

    Yields:
        ViolationWitness: in instance order, then policy order.
    """
    policies = list(space.policies())
    yield from _run(_gap_witnesses, space.instances(), (space, policies), num_workers)


def _rules(space: SearchSpace, rule_family) -> List[ChoiceRule]:
    if rule_family is None:
        rule_family = space.policies()
    return [r if isinstance(r, ChoiceRule) else ChoiceRule(r) for r in rule_family]


def find_substitutes_violations(
    space: SearchSpace,
    rule_family: Optional[Iterable] = None,
    max_n: Optional[int] = None,
    num_workers: int = 1,
) -> Iterator[ViolationWitness]:
    """
    Run the exhaustive substitutes check on every instance of `space`, taken
    as a universe, for every rule of `rule_family` (default: the space's
    policy family). At most one witness per (universe, rule).
    """
    rules = _rules(space, rule_family)
    yield from _run(_substitutes_witnesses, space.instances(), (rules, max_n), num_workers)


def _chosen_positions(rule: ChoiceRule, inst: Instance) -> FrozenSet[int]:
    chosen = rule.chosen(inst)
    return frozenset(k for k, i in enumerate(inst.individuals) if i.id in chosen)


def _sweep(space: SearchSpace, rule: ChoiceRule, capacity: int, reserved) -> List[ViolationWitness]:
    # rosters come smaller first: a roster minus one individual was seen one size earlier
    previous, current, size = {}, {}, 0
    for roster in space.rosters(range(1, space.largest_roster + 1)):
        if len(roster) != size:
            previous, current, size = current, {}, len(roster)
        inst = space.build(roster, capacity, reserved)
        after = current[roster] = _chosen_positions(rule, inst)
        if size < 2:
            continue
        for j in range(size):
            rest = roster[:j] + roster[j + 1 :]
            before = previous.get(rest)
            if before is None:
                before = _chosen_positions(rule, space.build(rest, capacity, reserved))
            for p in range(size - 1):
                i = p if p < j else p + 1
                if p not in before and i in after:
                    ids = [x.id for x in inst.individuals]
                    subset = ids[:j] + ids[j + 1 :]
                    return [substitutes_witness(rule.policy, inst, subset, ids[j], ids[i])]
    return []


def sweep_substitutes_violations(
    space: SearchSpace,
    rule_family: Optional[Iterable] = None,
    max_n: Optional[int] = None,
    num_workers: int = 1,
) -> Iterator[ViolationWitness]:
    """
    The substitutes search over a whole enumerated space at once.

    A violation (S, j, i) inside a universe is a violation on the roster
    S + {j} with S the roster minus j. The sweep therefore allocates every
    canonical roster of up to ``space.largest_roster`` individuals once per
    (rule, capacity, quotas) and compares it with its rosters of one
    individual fewer, instead of evaluating all subsets of every universe.
    Some universe of the space violates substitutes iff the sweep reports a
    witness for its (rule, capacity, quotas). Included instances are
    checked as universes first, bounded by `max_n`.

    Yields:
        ViolationWitness: at most one per (rule, capacity, quotas), on the
        first violating roster of the enumeration; in rule order, then
        configuration order.
    """
    if space.samples > 0:
        raise ValueError("a sweep enumerates the space and cannot be sampled")
    rules = _rules(space, rule_family)
    yield from _run(_substitutes_witnesses, space.include, (rules, max_n), num_workers)

    bare = replace(space, include=())
    tasks = [(rule, c, r) for rule in rules for c, r in space.configurations()]
    logger.info(
        "Sweeping rosters of up to {} individuals under {} rule/quota pairs".format(
            space.largest_roster, len(tasks)
        )
    )
    if num_workers <= 1:
        for task in tasks:
            yield from _sweep(bare, *task)
        return
    with ProcessPoolExecutor(max_workers=num_workers) as pool:
        columns = zip(*tasks) if tasks else ((), (), ())
        for found in pool.map(_sweep, itertools.repeat(bare), *columns):
            yield from found
