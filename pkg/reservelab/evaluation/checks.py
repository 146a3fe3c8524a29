from fractions import Fraction
from typing import Iterator, Optional

from reservelab.model import RESERVE_CATEGORIES, Category, Instance, format_score, members_of
from reservelab.policies import PolicyKind, PolicySpec, build_category_order, merit_key
from .cutoffs import CutoffReport
from .witness import FAIRNESS, GAP, NONWASTE, ViolationWitness

__all__ = [
    "gap_check",
    "check_fairness",
    "iter_fairness_violations",
    "check_nonwaste",
    "iter_nonwaste_violations",
]


def gap_check(report: CutoffReport, bound) -> Optional[ViolationWitness]:
    """
    The open cutoff may exceed the target category's cutoff by at most
    `bound` marks (inclusive). Passes vacuously when either cutoff is absent.

    Returns:
        None on pass, otherwise a ViolationWitness.
    """
    bound = Fraction(bound)
    gap = report.gap
    if gap is None or gap <= bound:
        return None
    policy = report.assignment.policy if report.assignment is not None else None
    holders = tuple(
        h for h in (report.holder(Category.OPEN), report.holder(report.target)) if h is not None
    )
    return ViolationWitness(
        kind=GAP,
        instance=report.instance,
        policy=policy,
        individuals=holders,
        trace="open cutoff {} minus {} cutoff {} is {} > {}".format(
            format_score(report.open_cutoff),
            report.target,
            format_score(report.target_cutoff),
            format_score(gap),
            format_score(bound),
        ),
        details={
            "bound": bound,
            "gap": gap,
            "open_cutoff": report.open_cutoff,
            "cutoff": report.target_cutoff,
            "category": report.target,
        },
        assignment=report.assignment,
    )


def iter_fairness_violations(inst: Instance, a) -> Iterator[ViolationWitness]:
    """
    Within every category (each reserve label and g), a member may be seated
    only if every strictly higher-scored member is seated too. Yields one
    witness per offending (higher unseated, lower seated) pair, categories
    in g, SC, ST, OBC, EWS order and pairs best-first.
    """
    for c in (Category.GENERAL,) + RESERVE_CATEGORIES:
        members = sorted(members_of(inst, c), key=merit_key)
        unseated = [i for i in members if i.id not in a.seats]
        seated = [i for i in reversed(members) if i.id in a.seats]
        for hi in unseated:
            for lo in seated:
                if hi.score <= lo.score:
                    break
                yield ViolationWitness(
                    kind=FAIRNESS,
                    instance=inst,
                    policy=a.policy,
                    individuals=(hi.id, lo.id),
                    trace="{} member {} ({}) rejected while {} ({}) is seated at {}".format(
                        c, hi.id, format_score(hi.score),
                        lo.id, format_score(lo.score), a.seats[lo.id],
                    ),
                    details={"category": c},
                    assignment=a,
                )


def check_fairness(inst: Instance, a) -> Optional[ViolationWitness]:
    return next(iter_fairness_violations(inst, a), None)


def _gap_floor(inst: Instance, a, policy: PolicySpec, c: Category):
    if policy.kind != PolicyKind.GAP or c != policy.category:
        return None
    prec = list(inst.precedence)
    if prec.index(Category.OPEN) > prec.index(c):
        return None
    open_seated = [inst.get(iid).score for iid in a.seated_at(Category.OPEN)]
    if not open_seated:
        return None
    return min(open_seated) - policy.gap_bound


def iter_nonwaste_violations(inst: Instance, a, policy: PolicySpec) -> Iterator[ViolationWitness]:
    """
    A seat may stay vacant only when no unseated individual is acceptable to
    its category's priority order under `policy` (and, for a gap policy,
    clears the score floor). Yields one witness per (vacant category,
    unseated acceptable individual).
    """
    for c in inst.precedence:
        quota = inst.quota(c)
        vacant = quota - len(a.seated_at(c))
        if quota <= 0 or vacant <= 0:
            continue
        order = build_category_order(inst, c, policy)
        floor = _gap_floor(inst, a, policy, c)
        for iid in order.acceptable:
            if iid in a.seats:
                continue
            if floor is not None and inst.get(iid).score < floor:
                continue
            yield ViolationWitness(
                kind=NONWASTE,
                instance=inst,
                policy=policy,
                individuals=(iid,),
                trace="{} of {} {} seat(s) vacant while acceptable {} is unseated".format(
                    vacant, quota, c, iid
                ),
                details={"seat": c},
                assignment=a,
            )


def check_nonwaste(inst: Instance, a, policy: PolicySpec) -> Optional[ViolationWitness]:
    return next(iter_nonwaste_violations(inst, a, policy), None)
