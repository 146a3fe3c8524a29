import json
import logging
import os
from fractions import Fraction

from fvcore.common.file_io import PathManager

from reservelab.errors import InstanceError
from reservelab.model import (
    DEFAULT_PRECEDENCE,
    Category,
    Individual,
    Instance,
    format_score,
    id_key,
    parse_category,
    validate_instance,
)
from reservelab.policies import policy_from_dict, policy_to_dict
from .builtin import INSTANCE_REGISTRY, builtin_instance

__all__ = [
    "instance_from_dict",
    "instance_to_dict",
    "assignment_to_dict",
    "assignment_from_dict",
    "load_instance",
    "dump_instance",
    "load_assignment",
    "dump_json",
    "dump_assignment",
    "witness_to_dict",
    "witness_from_dict",
    "dump_witness",
    "load_witness",
]

logger = logging.getLogger(__name__)


def _expect(value, types, what):
    if not isinstance(value, types) or isinstance(value, bool):
        raise InstanceError("{} must be {}, got {!r}".format(
            what, " or ".join(t.__name__ for t in types), value))
    return value


def instance_from_dict(d) -> Instance:
    """
    Build a validated Instance from the instance-file layout:
    {"capacity", "reserved", "precedence", "individuals": [{"id", "categories", "score"}],
     "distinct_scores", "policy"}.
    """
    _expect(d, (dict,), "an instance")
    try:
        rows = _expect(d.get("individuals", []), (list,), "'individuals'")
        individuals = []
        for row in rows:
            _expect(row, (dict,), "an individual")
            categories = _expect(row["categories"], (str, list), "'categories'")
            individuals.append(Individual.create(row["id"], categories, row["score"]))
        capacity = _expect(d["capacity"], (int,), "'capacity'")
    except KeyError as e:
        raise InstanceError("instance file is missing key {}".format(e)) from None
    reserved = _expect(d.get("reserved", {}), (dict,), "'reserved'")
    for c, n in reserved.items():
        _expect(n, (int,), "quota of {}".format(c))
    precedence = _expect(d.get("precedence") or list(DEFAULT_PRECEDENCE), (list, tuple),
                         "'precedence'")
    policy = d.get("policy")
    inst = Instance.create(
        individuals,
        capacity=capacity,
        reserved=reserved,
        precedence=precedence,
        distinct_scores=d.get("distinct_scores", False),
        policy=policy_from_dict(policy) if policy else None,
    )
    return validate_instance(inst)


def instance_to_dict(inst: Instance) -> dict:
    out = {
        "capacity": inst.capacity,
        "reserved": {c.value: n for c, n in inst.reserved},
        "precedence": [c.value for c in inst.precedence],
        "distinct_scores": inst.distinct_scores,
        "individuals": [
            {
                "id": i.id,
                "categories": sorted(c.value for c in i.memberships),
                "score": format_score(i.score),
            }
            for i in sorted(inst.individuals, key=lambda i: id_key(i.id))
        ],
    }
    if inst.policy is not None:
        out["policy"] = policy_to_dict(inst.policy)
    return out


def assignment_to_dict(assignment) -> dict:
    out = {
        "seats": {
            iid: assignment.seats[iid].value for iid in sorted(assignment.seats, key=id_key)
        },
        "rejected": sorted(assignment.rejected, key=id_key),
        "vacancies": {c.value: n for c, n in assignment.vacancies.items()},
    }
    if assignment.policy is not None:
        out["policy"] = policy_to_dict(assignment.policy)
    return out


def assignment_from_dict(d):
    # the engine imports this package's siblings; keep the import local
    from reservelab.engine.allocation import Assignment

    policy = d.get("policy")
    return Assignment(
        seats={str(iid): parse_category(c) for iid, c in d["seats"].items()},
        rejected=frozenset(str(i) for i in d.get("rejected", [])),
        vacancies={parse_category(c): int(n) for c, n in d.get("vacancies", {}).items()},
        policy=policy_from_dict(policy) if policy else None,
    )


def load_instance(path_or_name: str) -> Instance:
    """
    Load an instance file, or a builtin instance when `path_or_name` is a
    registered name and no such file exists.
    """
    if not PathManager.exists(path_or_name) and path_or_name in INSTANCE_REGISTRY:
        logger.info("Using builtin instance '{}'".format(path_or_name))
        return builtin_instance(path_or_name)
    with PathManager.open(path_or_name, "r") as f:
        d = json.load(f, parse_float=Fraction)
    return instance_from_dict(d)


def load_assignment(path: str):
    with PathManager.open(path, "r") as f:
        d = json.load(f, parse_float=Fraction)
    # allocate's structured output nests the assignment
    return assignment_from_dict(d.get("assignment", d))


def dump_json(obj, path: str) -> None:
    dirname = os.path.dirname(path)
    if dirname:
        PathManager.mkdirs(dirname)
    with PathManager.open(path, "w") as f:
        json.dump(obj, f, indent=2, sort_keys=True)
        f.write("\n")


def dump_instance(inst: Instance, path: str) -> None:
    dump_json(instance_to_dict(inst), path)


def _plain(value):
    if isinstance(value, Fraction):
        return format_score(value)
    if isinstance(value, Category):
        return value.value
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    return value


def witness_to_dict(w) -> dict:
    out = {
        "kind": w.kind,
        "individuals": list(w.individuals),
        "trace": w.trace,
        "details": {k: _plain(v) for k, v in sorted(w.details.items())},
        "instance": instance_to_dict(w.instance),
    }
    if w.policy is not None:
        out["policy"] = policy_to_dict(w.policy)
    if w.assignment is not None:
        out["assignment"] = assignment_to_dict(w.assignment)
    return out


def witness_from_dict(d):
    from reservelab.evaluation.witness import ViolationWitness

    details = dict(d.get("details", {}))
    for key in ("bound", "gap", "open_cutoff", "cutoff"):
        if details.get(key) is not None:
            details[key] = Fraction(str(details[key]))
    for key in ("category", "seat"):
        if key in details:
            details[key] = parse_category(details[key])
    if "subset" in details:
        details["subset"] = tuple(details["subset"])
    policy = d.get("policy")
    assignment = d.get("assignment")
    return ViolationWitness(
        kind=d["kind"],
        instance=instance_from_dict(d["instance"]),
        policy=policy_from_dict(policy) if policy else None,
        individuals=tuple(d["individuals"]),
        trace=d.get("trace", ""),
        details=details,
        assignment=assignment_from_dict(assignment) if assignment else None,
    )


def dump_assignment(assignment, path: str, report=None) -> None:
    out = {"assignment": assignment_to_dict(assignment)}
    if report is not None:
        out["cutoffs"] = report.as_dict()
    dump_json(out, path)


def dump_witness(w, path: str) -> None:
    dump_json(witness_to_dict(w), path)


def load_witness(path: str):
    with PathManager.open(path, "r") as f:
        return witness_from_dict(json.load(f, parse_float=Fraction))
