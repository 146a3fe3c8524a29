import logging
import pprint
from collections import OrderedDict
from fractions import Fraction

from tabulate import tabulate

from reservelab.model import format_score

__all__ = ["print_csv_format", "verify_results", "format_cutoff_table"]


def _cell(value):
    if value is None:
        return "ABSENT"
    if isinstance(value, Fraction):
        return str(format_score(value))
    return str(value)


def print_csv_format(results):
    """
    Print main metrics so that they are easy to copypaste into a spreadsheet.

    Args:
        results (OrderedDict[dict]): task_name -> {metric -> value}
    """
    assert isinstance(results, OrderedDict), results  # unordered results cannot be properly printed
    logger = logging.getLogger(__name__)
    for task, res in results.items():
        logger.info("copypaste: Task: {}".format(task))
        logger.info("copypaste: " + ",".join(str(k) for k in res))
        logger.info("copypaste: " + ",".join(_cell(v) for v in res.values()))


def _matches(actual, expected) -> bool:
    if actual is None or expected is None:
        return (actual is None or actual == "ABSENT") and (expected is None or expected == "ABSENT")
    try:
        return Fraction(str(actual)) == Fraction(str(expected))
    except (TypeError, ValueError):
        return str(actual) == str(expected)


def verify_results(cfg, results):
    """
    Compare `results` with ``cfg.TEST.EXPECTED_RESULTS``, a list of
    [task, metric, expected] triples. Numbers compare exactly; "ABSENT"
    matches a missing cutoff.

    Args:
        results (OrderedDict[dict]): task_name -> {metric -> value}

    Returns:
        bool: whether the verification succeeds or not
    """
    expected_results = cfg.TEST.EXPECTED_RESULTS
    if not len(expected_results):
        return True

    ok = True
    for task, metric, expected in expected_results:
        actual = results.get(task, {}).get(metric, "MISSING")
        if actual == "MISSING" or not _matches(actual, expected):
            ok = False

    logger = logging.getLogger(__name__)
    if not ok:
        logger.error("Result verification failed!")
        logger.error("Expected Results: " + str(expected_results))
        logger.error("Actual Results: " + pprint.pformat(results))
    else:
        logger.info("Results verification passed.")
    return ok


def format_cutoff_table(report) -> str:
    """
    Cutoff per seat category, with the holder of each cutoff, as a text table.
    """
    rows = [
        [c.value, _cell(v), report.holder(c) or "-"] for c, v in report.cutoffs.items()
    ]
    rows.append(["gap ({} vs OPEN)".format(report.target), _cell(report.gap), "-"])
    return tabulate(rows, headers=["category", "cutoff", "holder"], tablefmt="pipe")
