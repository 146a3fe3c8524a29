import datetime
import logging
import time
from collections import OrderedDict

from reservelab.model import format_score
from reservelab.policies import PolicyKind
from .checks import gap_check, iter_fairness_violations, iter_nonwaste_violations
from .cutoffs import cutoffs
from .substitutes import check_substitutes

__all__ = [
    "AuditEvaluator",
    "AuditEvaluators",
    "GapEvaluator",
    "FairnessEvaluator",
    "NonWasteEvaluator",
    "SubstitutesEvaluator",
    "CHECKS",
    "build_audit_evaluators",
    "audit_on_instance",
]


def _fmt(value):
    return "ABSENT" if value is None else format_score(value)


class AuditEvaluator:
    """
    Base class for an audit evaluator.

    The function :func:`audit_on_instance` allocates seats of an instance,
    and has an AuditEvaluator process the (instance, assignment) pair.

    This class accumulates violation witnesses (by :meth:`process`), and
    produces a verdict in the end (by :meth:`evaluate`).
    """

    def reset(self):
        """
        Preparation for a new round of auditing.
        Should be called before starting a round of auditing.
        """
        self._witnesses = []

    def process(self, inst, assignment):
        """
        Process an instance together with an allocation of it.

        Args:
            inst (Instance): the audited instance
            assignment (Assignment): an allocation of `inst`
        """
        pass

    def evaluate(self):
        """
        Summarize the audit after processing all pairs.

        Returns:
            dict:
                * key: the name of the check (e.g., gap)
                * value: a dict of {metric name: value}, e.g.: {"violations": 1}
        """
        pass

    @property
    def witnesses(self):
        return list(getattr(self, "_witnesses", []))


class AuditEvaluators(AuditEvaluator):
    def __init__(self, evaluators):
        assert len(evaluators)
        super().__init__()
        self._evaluators = evaluators

    def reset(self):
        for evaluator in self._evaluators:
            evaluator.reset()

    def process(self, inst, assignment):
        for evaluator in self._evaluators:
            evaluator.process(inst, assignment)

    def evaluate(self):
        results = OrderedDict()
        for evaluator in self._evaluators:
            result = evaluator.evaluate()
            for k, v in result.items():
                assert (
                    k not in results
                ), "Different evaluators produce results with the same key {}".format(k)
                results[k] = v
        return results

    @property
    def witnesses(self):
        return [w for e in self._evaluators for w in e.witnesses]


class GapEvaluator(AuditEvaluator):
    """
    Open cutoff minus the target category's cutoff, against a bound.
    """

    def __init__(self, bound):
        self._bound = bound
        self.reset()

    def reset(self):
        super().reset()
        self._report = None

    def process(self, inst, assignment):
        self._report = cutoffs(inst, assignment)
        w = gap_check(self._report, self._bound)
        if w is not None:
            self._witnesses.append(w)

    def evaluate(self):
        r = self._report
        res = OrderedDict(
            open_cutoff=_fmt(r.open_cutoff if r else None),
            cutoff=_fmt(r.target_cutoff if r else None),
            gap=_fmt(r.gap if r else None),
            bound=_fmt(self._bound),
            violations=len(self._witnesses),
        )
        return {"gap": res}


class FairnessEvaluator(AuditEvaluator):
    def __init__(self):
        self.reset()

    def process(self, inst, assignment):
        self._witnesses.extend(iter_fairness_violations(inst, assignment))

    def evaluate(self):
        return {"fairness": OrderedDict(violations=len(self._witnesses))}


class NonWasteEvaluator(AuditEvaluator):
    def __init__(self, policy):
        self._policy = policy
        self.reset()

    def reset(self):
        super().reset()
        self._vacant = 0

    def process(self, inst, assignment):
        self._vacant += sum(assignment.vacancies.values())
        self._witnesses.extend(iter_nonwaste_violations(inst, assignment, self._policy))

    def evaluate(self):
        return {"waste": OrderedDict(vacant=self._vacant, violations=len(self._witnesses))}


class SubstitutesEvaluator(AuditEvaluator):
    """
    Exhaustive substitutes check of the policy's choice rule over the
    processed roster. The assignment itself is not consulted.
    """

    def __init__(self, policy, max_n=None, num_workers=1):
        self._policy = policy
        self._max_n = max_n
        self._num_workers = num_workers
        self.reset()

    def reset(self):
        super().reset()
        self._universe = 0

    def process(self, inst, assignment):
        self._universe = max(self._universe, len(inst.individuals))
        w = check_substitutes(self._policy, inst, self._max_n, self._num_workers)
        if w is not None:
            self._witnesses.append(w)

    def evaluate(self):
        return {
            "substitutes": OrderedDict(
                universe=self._universe, violations=len(self._witnesses)
            )
        }


CHECKS = ("gap", "fairness", "waste", "substitutes")
# "not more than 10 marks" below the open cutoff
DEFAULT_GAP_BOUND = 10


def build_audit_evaluators(cfg, policy, checks=None):
    """
    Create the evaluators named in `checks` (default ``cfg.AUDIT.CHECKS``).

    The gap bound is the policy's own bound for a gap policy and
    ``cfg.AUDIT.GAP_BOUND`` otherwise.
    """
    checks = list(cfg.AUDIT.CHECKS if checks is None else checks)
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise ValueError("unknown audit check(s) {}; choose from {}".format(unknown, CHECKS))
    evaluator_list = []
    for name in CHECKS:
        if name not in checks:
            continue
        if name == "gap":
            bound = policy.gap_bound if policy.kind == PolicyKind.GAP else cfg.AUDIT.GAP_BOUND
            if bound is None:
                bound = DEFAULT_GAP_BOUND
            evaluator_list.append(GapEvaluator(bound))
        elif name == "fairness":
            evaluator_list.append(FairnessEvaluator())
        elif name == "waste":
            evaluator_list.append(NonWasteEvaluator(policy))
        else:
            evaluator_list.append(
                SubstitutesEvaluator(policy, cfg.AUDIT.MAX_N, cfg.AUDIT.NUM_WORKERS)
            )
    if len(evaluator_list) == 1:
        return evaluator_list[0]
    return AuditEvaluators(evaluator_list)


def audit_on_instance(inst, policy, evaluator, assignment=None):
    """
    Allocate `inst` under `policy` (unless `assignment` is given) and run
    `evaluator` over the result.

    Returns:
        dict: the results of ``evaluator.evaluate()``
    """
    from reservelab.engine.allocation import allocate

    logger = logging.getLogger(__name__)
    evaluator.reset()
    start_time = time.perf_counter()
    if assignment is None:
        assignment = allocate(inst, policy)
    evaluator.process(inst, assignment)
    results = evaluator.evaluate()
    total_time = datetime.timedelta(seconds=time.perf_counter() - start_time)
    logger.info(
        "Audited {} individuals under {} in {}".format(
            len(inst.individuals), policy.describe(), total_time
        )
    )
    # a lone evaluator may return a plain dict
    return OrderedDict(results or {})
