from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from reservelab.model import Instance
from reservelab.policies import PolicySpec

__all__ = [
    "GAP",
    "FAIRNESS",
    "NONWASTE",
    "SUBSTITUTES",
    "ViolationWitness",
    "replay",
]

GAP = "gap"
FAIRNESS = "fairness"
NONWASTE = "nonwaste"
SUBSTITUTES = "substitutes"


@dataclass(frozen=True)
class ViolationWitness:
    """
    Evidence that an axiom fails: the instance, the policy under which it
    was judged, the individuals involved and the check-specific parameters
    in `details`, enough for :func:`replay` to derive the failure again.

    For substitutes witnesses `instance` is the expanded roster S + {j}.
    """

    kind: str
    instance: Instance
    policy: Optional[PolicySpec]
    individuals: Tuple[str, ...]
    trace: str
    details: Dict[str, Any] = field(default_factory=dict)
    # the allocation that was judged, for witnesses found on a given assignment
    assignment: Optional[Any] = field(default=None, compare=False, repr=False)

    def summary(self) -> str:
        return "{}: {}".format(self.kind, self.trace)


def _judged_assignment(w: ViolationWitness):
    from reservelab.engine.allocation import allocate

    if w.assignment is not None and (w.policy is None or w.assignment.policy != w.policy):
        return w.assignment
    if w.policy is None:
        return None
    return allocate(w.instance, w.policy)


def replay(w: ViolationWitness) -> bool:
    """
    Re-derive the violation recorded by `w`. Returns True iff it still holds.
    """
    from reservelab.engine.allocation import allocate
    from .checks import gap_check, iter_fairness_violations, iter_nonwaste_violations
    from .cutoffs import cutoffs

    if w.kind == SUBSTITUTES:
        (i,) = w.individuals
        smaller = w.instance.restrict(w.details["subset"])
        before = allocate(smaller, w.policy)
        after = allocate(w.instance, w.policy)
        return i in before.rejected and i in after.chosen

    a = _judged_assignment(w)
    if a is None:
        return False
    if w.kind == GAP:
        report = cutoffs(w.instance, a, w.details.get("category"))
        again = gap_check(report, w.details["bound"])
        return again is not None
    if w.kind == FAIRNESS:
        again = iter_fairness_violations(w.instance, a)
        return any(v.individuals == w.individuals for v in again)
    if w.kind == NONWASTE:
        again = iter_nonwaste_violations(w.instance, a, w.policy)
        return any(v.individuals == w.individuals for v in again)
    raise ValueError("unknown witness kind {!r}".format(w.kind))
