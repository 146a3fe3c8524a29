"""
Greedy shrinking of violation witnesses.

Each move produces a strictly smaller instance under the measure
(roster size, capacity + reserved quotas, sum of scores); the first move
whose instance still exhibits a violation of the same kind is taken, until
no move applies.
"""
import logging
from fractions import Fraction
from typing import Iterator, Optional

from reservelab.engine.allocation import allocate, remove_individual
from reservelab.errors import InstanceError, NonReplayingWitness
from reservelab.evaluation import (
    FAIRNESS,
    GAP,
    NONWASTE,
    SUBSTITUTES,
    ViolationWitness,
    check_expansions,
    cutoffs,
    gap_check,
    iter_fairness_violations,
    iter_nonwaste_violations,
    replay,
)
from reservelab.model import Individual, Instance, id_key, validate_instance

__all__ = ["shrink", "rederive"]

logger = logging.getLogger(__name__)


def rederive(w: ViolationWitness, inst: Instance) -> Optional[ViolationWitness]:
    """
    A violation of the same kind as `w`, under the same policy and
    parameters, on `inst`; None if there is none.
    """
    if w.kind == SUBSTITUTES:
        return check_expansions(w.policy, inst)
    a = allocate(inst, w.policy)
    if w.kind == GAP:
        return gap_check(cutoffs(inst, a, w.details.get("category")), w.details["bound"])
    if w.kind == FAIRNESS:
        return next(iter_fairness_violations(inst, a), None)
    if w.kind == NONWASTE:
        return next(iter_nonwaste_violations(inst, a, w.policy), None)
    raise ValueError("unknown witness kind {!r}".format(w.kind))


def _measure(inst: Instance):
    return (
        len(inst.individuals),
        inst.capacity + sum(n for _, n in inst.reserved),
        sum(i.score for i in inst.individuals),
    )


def _candidates(inst: Instance, score_floor: Fraction) -> Iterator[Instance]:
    for iid in sorted(inst.ids, key=id_key):
        yield remove_individual(inst, iid)

    quotas = inst.quotas
    for c, n in inst.reserved:
        if n > 0:
            yield inst.replace(capacity=inst.capacity - 1, reserved={**quotas, c: n - 1})
    for c, n in inst.reserved:
        if n > 0:
            yield inst.replace(reserved={**quotas, c: n - 1})
    if inst.open_quota > 0:
        yield inst.replace(capacity=inst.capacity - 1)

    for k, i in enumerate(inst.individuals):
        lowered = [score_floor, i.score - 1]
        for score in lowered:
            if score_floor <= score < i.score:
                moved = Individual(id=i.id, memberships=i.memberships, score=score)
                roster = inst.individuals[:k] + (moved,) + inst.individuals[k + 1:]
                yield inst.replace(individuals=roster)


def shrink(w: ViolationWitness, score_floor=None) -> ViolationWitness:
    """
    Greedily shrink `w` while a violation of the same kind persists.

    Args:
        w (ViolationWitness): a witness that replays
        score_floor: scores are lowered toward this value, by default the
            lowest score of the witness instance

    Returns:
        ViolationWitness: a witness that replays and that no single removal
        of an individual keeps violating.

    Raises:
        NonReplayingWitness
    """
    if not replay(w):
        raise NonReplayingWitness("witness does not replay: {}".format(w.summary()))
    if w.policy is None:
        logger.warning("Witness carries no policy, returning it unshrunk")
        return w
    scores = [i.score for i in w.instance.individuals]
    floor = Fraction(score_floor) if score_floor is not None else min(scores, default=Fraction(0))

    current = w
    steps = 0
    progressed = True
    while progressed:
        progressed = False
        size = _measure(current.instance)
        for candidate in _candidates(current.instance, floor):
            try:
                candidate = validate_instance(candidate)
            except InstanceError:
                continue
            assert _measure(candidate) < size, "shrink move does not reduce the instance"
            found = rederive(current, candidate)
            if found is not None:
                current = found
                steps += 1
                progressed = True
                break
    logger.debug(
        "Shrunk {} witness from {} to {} individuals in {} steps".format(
            w.kind, len(w.instance), len(current.instance), steps
        )
    )
    return current
