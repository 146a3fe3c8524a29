from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional

from reservelab.errors import ForeignAssignment
from reservelab.model import Category, Instance, format_score, id_key

__all__ = ["CutoffReport", "cutoffs"]


@dataclass(frozen=True)
class CutoffReport:
    """
    Minimum raw score seated in every seat category (None when nobody sits
    there), and the gap between the open cutoff and the cutoff of `target`.
    """

    cutoffs: Dict[Category, Optional[Fraction]]
    target: Category = Category.OBC
    instance: Optional[Instance] = field(default=None, compare=False, repr=False)
    assignment: Optional[object] = field(default=None, compare=False, repr=False)

    def cutoff(self, category: Category) -> Optional[Fraction]:
        return self.cutoffs.get(category)

    @property
    def open_cutoff(self) -> Optional[Fraction]:
        return self.cutoff(Category.OPEN)

    @property
    def target_cutoff(self) -> Optional[Fraction]:
        return self.cutoff(self.target)

    @property
    def gap(self) -> Optional[Fraction]:
        if self.open_cutoff is None or self.target_cutoff is None:
            return None
        return self.open_cutoff - self.target_cutoff

    def holder(self, category: Category) -> Optional[str]:
        """
        Id of the individual setting the cutoff of `category` (smallest id on ties).
        """
        if self.instance is None or self.assignment is None or self.cutoff(category) is None:
            return None
        at = [
            iid for iid in self.assignment.seated_at(category)
            if self.instance.get(iid).score == self.cutoff(category)
        ]
        return min(at, key=id_key)

    def as_dict(self) -> dict:
        out = {
            c.value: ("ABSENT" if v is None else format_score(v))
            for c, v in self.cutoffs.items()
        }
        out["gap"] = "ABSENT" if self.gap is None else format_score(self.gap)
        return out


def cutoffs(inst: Instance, a, target: Optional[Category] = None) -> CutoffReport:
    """
    Args:
        inst (Instance): the instance `a` was computed from
        a (Assignment): an allocation of `inst`
        target (Category): category compared against OPEN for the gap;
            defaults to the category of `a.policy`, else OBC.

    Raises:
        ForeignAssignment: `a` names individuals absent from `inst`.
    """
    known = set(inst.ids)
    foreign = sorted((set(a.seats) | set(a.rejected)) - known, key=id_key)
    if foreign:
        raise ForeignAssignment(
            "assignment references individuals not in the instance: {}".format(
                ", ".join(foreign))
        )
    if target is None:
        target = a.policy.seat_policy.category if a.policy is not None else Category.OBC

    categories = list(inst.precedence)
    for c in a.seats.values():
        if c not in categories:
            categories.append(c)
    scores = {i.id: i.score for i in inst.individuals}
    table = {}
    for c in categories:
        seated = [scores[iid] for iid, at in a.seats.items() if at == c]
        table[c] = min(seated) if seated else None
    return CutoffReport(table, target, inst, a)
