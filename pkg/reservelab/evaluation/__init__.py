from .cutoffs import CutoffReport, cutoffs
from .witness import FAIRNESS, GAP, NONWASTE, SUBSTITUTES, ViolationWitness, replay
from .checks import (
    check_fairness,
    check_nonwaste,
    gap_check,
    iter_fairness_violations,
    iter_nonwaste_violations,
)
from .substitutes import (
    check_expansions,
    check_substitutes,
    substitutes_witness,
    default_max_universe,
    iter_substitutes_violations,
)
from .evaluator import (
    CHECKS,
    AuditEvaluator,
    AuditEvaluators,
    FairnessEvaluator,
    GapEvaluator,
    NonWasteEvaluator,
    SubstitutesEvaluator,
    audit_on_instance,
    build_audit_evaluators,
)
from .testing import format_cutoff_table, print_csv_format, verify_results

__all__ = [k for k in globals().keys() if not k.startswith("_")]
