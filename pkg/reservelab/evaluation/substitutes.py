"""
Exhaustive substitutes check of a choice rule over a small universe.

A rule violates substitutes when some individual i rejected from a set S
is chosen from S + {j} for an individual j outside S: the newcomer j helps
i in. The check evaluates the rule on every subset of the universe once and
then compares each subset with its one-element extensions.
"""
import itertools
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator, List, Optional

from reservelab.errors import UniverseTooLarge
from reservelab.model import Instance, id_key
from reservelab.policies import PolicySpec
from .witness import SUBSTITUTES, ViolationWitness

__all__ = [
    "MAX_N_ENV",
    "DEFAULT_MAX_N",
    "default_max_universe",
    "iter_substitutes_violations",
    "check_substitutes",
    "check_expansions",
    "substitutes_witness",
]

MAX_N_ENV = "RESERVE_LAB_MAX_N"
DEFAULT_MAX_N = 12

logger = logging.getLogger(__name__)


def default_max_universe(fallback: int = DEFAULT_MAX_N) -> int:
    value = os.environ.get(MAX_N_ENV)
    if value is None or not value.strip():
        return fallback
    return int(value)


def _as_rule(rule):
    if isinstance(rule, PolicySpec):
        from reservelab.engine.allocation import ChoiceRule

        return ChoiceRule(rule)
    return rule


def _chosen_masks(rule, universe: Instance, ids, masks) -> List[int]:
    out = []
    for mask in masks:
        subset = [iid for k, iid in enumerate(ids) if mask >> k & 1]
        chosen = rule(universe.restrict(subset)).chosen
        out.append(sum(1 << k for k, iid in enumerate(ids) if iid in chosen))
    return out


def _evaluate_all(rule, universe: Instance, ids, num_workers: int) -> List[int]:
    total = 1 << len(ids)
    if num_workers <= 1 or total < 64:
        return _chosen_masks(rule, universe, ids, range(total))
    chunk = max(1, total // (num_workers * 4))
    chunks = [range(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    with ProcessPoolExecutor(max_workers=num_workers) as pool:
        parts = pool.map(
            _chosen_masks,
            itertools.repeat(rule),
            itertools.repeat(universe),
            itertools.repeat(ids),
            chunks,
        )
        return [m for part in parts for m in part]


def substitutes_witness(policy, inst: Instance, subset, newcomer: str, iid: str) -> ViolationWitness:
    """
    The witness that `iid` is rejected from `subset` and chosen once
    `newcomer` joins; `inst` holds exactly `subset` and the newcomer.
    """
    return ViolationWitness(
        kind=SUBSTITUTES,
        instance=inst,
        policy=policy,
        individuals=(iid,),
        trace="{} is rejected from {{{}}} but chosen once {} joins".format(
            iid, ", ".join(subset), newcomer
        ),
        details={"subset": tuple(subset), "newcomer": newcomer},
    )


def _lex_subsets(n: int):
    # index tuples in lexicographic order: (), (0,), (0, 1), ..., (0, n-1), (1,), ...
    stack = [()]
    while stack:
        combo = stack.pop()
        yield combo
        start = combo[-1] + 1 if combo else 0
        stack.extend(combo + (k,) for k in reversed(range(start, n)))


def iter_substitutes_violations(
    rule, universe: Instance, max_n: Optional[int] = None, num_workers: int = 1
) -> Iterator[ViolationWitness]:
    """
    Yield every (S, j, i) substitutes violation of `rule` on `universe`.

    Witnesses come in lexicographic order of (S, j, i), with S taken as
    its natural-sorted tuple of ids, so the first one is the same however
    the subset evaluations were split across workers.

    Args:
        rule: a ChoiceRule (or a PolicySpec, wrapped into one)
        universe (Instance): the roster whose subsets are enumerated
        max_n (int): largest allowed roster; defaults to $RESERVE_LAB_MAX_N or 12
        num_workers (int): processes evaluating the rule on subsets

    Raises:
        UniverseTooLarge
    """
    rule = _as_rule(rule)
    bound = default_max_universe() if max_n is None else max_n
    ids = sorted(universe.ids, key=id_key)
    n = len(ids)
    if n > bound:
        raise UniverseTooLarge(n, bound)

    chosen = _evaluate_all(rule, universe, ids, num_workers)
    logger.debug("evaluated {} on {} subsets of {} individuals".format(rule, len(chosen), n))

    for combo in _lex_subsets(n):
        mask = sum(1 << k for k in combo)
        rejected = mask & ~chosen[mask]
        if not rejected:
            continue
        for j in range(n):
            if mask >> j & 1:
                continue
            helped = rejected & chosen[mask | 1 << j]
            for i in range(n):
                if not helped >> i & 1:
                    continue
                subset = tuple(ids[k] for k in combo)
                yield substitutes_witness(
                    rule.policy, universe.restrict(subset + (ids[j],)), subset, ids[j], ids[i]
                )


def check_expansions(rule, inst: Instance) -> Optional[ViolationWitness]:
    """
    The substitutes check restricted to S = roster minus one newcomer j:
    the first i rejected from S but chosen from the whole roster, trying j
    and then i in natural id order. A universe violates substitutes iff one
    of its sub-rosters fails this check.
    """
    rule = _as_rule(rule)
    ids = sorted(inst.ids, key=id_key)
    after = rule(inst).chosen
    for j in ids:
        subset = tuple(i for i in ids if i != j)
        before = rule(inst.restrict(subset))
        for i in subset:
            if i in before.rejected and i in after:
                return substitutes_witness(rule.policy, inst, subset, j, i)
    return None


def check_substitutes(
    rule, universe: Instance, max_n: Optional[int] = None, num_workers: int = 1
) -> Optional[ViolationWitness]:
    """
    Returns:
        None if no subset of `universe` exhibits a substitutes violation,
        otherwise the first witness in the order of
        :func:`iter_substitutes_violations`.
    """
    return next(iter_substitutes_violations(rule, universe, max_n, num_workers), None)
