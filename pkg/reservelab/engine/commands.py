"""
The allocate / audit / search commands. Each takes a frozen config and
returns the process exit code:

    0 pass, 1 I/O error, 2 invalid input, 3 violation found, 4 bound exceeded
"""
import functools
import itertools
import json
import logging
import os
from collections import OrderedDict

from fvcore.common.file_io import PathManager

from reservelab.data import (
    assignment_to_dict,
    dump_assignment,
    load_assignment,
    load_instance,
    witness_to_dict,
)
from reservelab.errors import ReserveLabError, UniverseTooLarge
from reservelab.evaluation import (
    NONWASTE,
    audit_on_instance,
    build_audit_evaluators,
    cutoffs,
    format_cutoff_table,
    print_csv_format,
    verify_results,
)
from reservelab.model import format_score, id_key, parse_category, validate_instance
from reservelab.policies import policy_from_cfg
from reservelab.search import (
    SearchSpace,
    find_gap_violations,
    find_substitutes_violations,
    shrink,
    sweep_substitutes_violations,
    write_witnesses,
)
from .allocation import allocate
from .hooks import StageLogger

__all__ = [
    "EXIT_OK",
    "EXIT_IO",
    "EXIT_INVALID",
    "EXIT_VIOLATION",
    "EXIT_BOUND",
    "prepare_instance",
    "cmd_allocate",
    "cmd_audit",
    "cmd_search",
    "COMMANDS",
]

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2
EXIT_VIOLATION = 3
EXIT_BOUND = 4

logger = logging.getLogger(__name__)


def _exit_codes(cmd):
    @functools.wraps(cmd)
    def wrapper(cfg):
        try:
            return cmd(cfg)
        except UniverseTooLarge as e:
            logger.error("UniverseTooLarge: {}".format(e))
            return EXIT_BOUND
        except OSError as e:
            logger.error("I/O error: {}".format(e))
            return EXIT_IO
        except (ReserveLabError, ValueError, KeyError) as e:
            # json.JSONDecodeError is a ValueError: malformed files are invalid input
            logger.error("{}: {}".format(type(e).__name__, e))
            return EXIT_INVALID

    return wrapper


def prepare_instance(cfg):
    """
    Load ``cfg.INSTANCE`` and apply the ``cfg.PRECEDENCE`` override.
    """
    if not cfg.INSTANCE:
        raise ValueError("no instance given: set INSTANCE (--instance)")
    inst = load_instance(cfg.INSTANCE)
    if cfg.PRECEDENCE:
        inst = validate_instance(
            inst.replace(precedence=tuple(parse_category(c) for c in cfg.PRECEDENCE))
        )
    return inst


def _emit(cfg, text, filename):
    print(text)
    if cfg.OUTPUT_DIR:
        PathManager.mkdirs(cfg.OUTPUT_DIR)
        with PathManager.open(os.path.join(cfg.OUTPUT_DIR, filename), "w") as f:
            f.write(text + "\n")


def _allocation_text(policy, a, report) -> str:
    lines = ["policy: {}".format(policy.describe())]
    lines += [r.trace_line() for r in a.trace]
    lines.append("chosen: {}".format(", ".join(sorted(a.chosen, key=id_key)) or "-"))
    lines.append("rejected: {}".format(", ".join(sorted(a.rejected, key=id_key)) or "-"))
    for r in a.trace:
        if r.floor is not None:
            lines.append("gap floor of {}: {}".format(r.category, format_score(r.floor)))
    lines.append(format_cutoff_table(report))
    return "\n".join(lines)


@_exit_codes
def cmd_allocate(cfg):
    """
    Allocate the seats of ``cfg.INSTANCE`` under the configured policy and
    write the assignment with its cutoffs.
    """
    inst = prepare_instance(cfg)
    policy = policy_from_cfg(cfg, inst.policy)
    logger.info("Allocating {} individuals under {}".format(len(inst.individuals),
                                                             policy.describe()))
    a = allocate(inst, policy, hooks=[StageLogger(logger)])
    report = cutoffs(inst, a)

    results = OrderedDict()
    results["cutoffs"] = report.as_dict()
    results["seats"] = OrderedDict(
        (i, a.seats[i].value if i in a.seats else "REJECTED")
        for i in sorted(inst.ids, key=id_key)
    )
    print_csv_format(results)

    if cfg.OUTPUT_FORMAT == "structured":
        out = {"assignment": assignment_to_dict(a), "cutoffs": report.as_dict()}
        print(json.dumps(out, indent=2, sort_keys=True))
        if cfg.OUTPUT_DIR:
            dump_assignment(a, os.path.join(cfg.OUTPUT_DIR, "assignment.json"), report)
    else:
        _emit(cfg, _allocation_text(policy, a, report), "allocation.txt")

    if not verify_results(cfg, results):
        return EXIT_VIOLATION
    return EXIT_OK


# audit result keys and the witness kinds they report
_CHECK_KINDS = {"gap": "gap", "fairness": "fairness", "waste": NONWASTE, "substitutes": "substitutes"}


@_exit_codes
def cmd_audit(cfg):
    """
    Run the checks of ``cfg.AUDIT.CHECKS`` on the allocation of
    ``cfg.INSTANCE`` (or on ``cfg.AUDIT.ASSIGNMENT``). Witnesses are written
    to ``cfg.OUTPUT_DIR`` when one is set.
    """
    inst = prepare_instance(cfg)
    a = None
    default = inst.policy
    if cfg.AUDIT.ASSIGNMENT:
        a = load_assignment(cfg.AUDIT.ASSIGNMENT)
        default = a.policy or default
    policy = policy_from_cfg(cfg, default)

    evaluator = build_audit_evaluators(cfg, policy)
    results = audit_on_instance(inst, policy, evaluator, a)
    witnesses = evaluator.witnesses
    print_csv_format(results)

    if cfg.OUTPUT_FORMAT == "structured":
        out = {"results": results, "witnesses": [witness_to_dict(w) for w in witnesses]}
        text = json.dumps(out, indent=2, sort_keys=True)
    else:
        lines = []
        for check, res in results.items():
            found = [w for w in witnesses if w.kind == _CHECK_KINDS[check]]
            if found:
                lines.append("{}: FAIL {}".format(check, found[0].summary()))
            else:
                lines.append("{}: PASS".format(check))
        text = "\n".join(lines)
    _emit(cfg, text, "audit.json" if cfg.OUTPUT_FORMAT == "structured" else "audit.txt")

    if witnesses:
        if cfg.OUTPUT_DIR:
            write_witnesses(witnesses, os.path.join(cfg.OUTPUT_DIR, "witnesses"))
        logger.warning("{} violation(s) found".format(len(witnesses)))
        return EXIT_VIOLATION
    logger.info("All checks passed: {}".format(", ".join(results)))
    return EXIT_OK


@_exit_codes
def cmd_search(cfg):
    """
    Search the configured space for gap or substitutes violations, shrink
    them, and write the witness corpus to ``cfg.OUTPUT_DIR``. Finding
    witnesses is not a failure.
    """
    include = [load_instance(p) for p in cfg.SEARCH.INCLUDE]
    space = SearchSpace.from_cfg(cfg, include)
    prop = cfg.SEARCH.PROPERTY
    logger.info("Searching for {} violations, up to {} individuals".format(prop, space.max_n))
    if prop == "gap":
        stream = find_gap_violations(space, num_workers=cfg.SEARCH.NUM_WORKERS)
    elif prop == "substitutes":
        find = sweep_substitutes_violations if cfg.SEARCH.SWEEP else find_substitutes_violations
        stream = find(
            space, max_n=cfg.AUDIT.MAX_N, num_workers=cfg.SEARCH.NUM_WORKERS
        )
    else:
        raise ValueError("unknown search property '{}'".format(prop))
    if cfg.SEARCH.LIMIT > 0:
        stream = itertools.islice(stream, cfg.SEARCH.LIMIT)
    if cfg.SEARCH.SHRINK:
        # lowered scores stay on the searched grid
        floor = min(space.scores, default=None)
        stream = map(functools.partial(shrink, score_floor=floor), stream)
    witnesses = list(stream)

    if cfg.OUTPUT_DIR:
        write_witnesses(witnesses, cfg.OUTPUT_DIR)
    if cfg.OUTPUT_FORMAT == "structured":
        out = {"property": prop, "count": len(witnesses),
               "witnesses": [w.summary() for w in witnesses]}
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        for w in witnesses:
            print(w.summary())
        print("found {} {} witness(es)".format(len(witnesses), prop))
    logger.info("Found {} witness(es)".format(len(witnesses)))
    return EXIT_OK


COMMANDS = OrderedDict(allocate=cmd_allocate, audit=cmd_audit, search=cmd_search)
