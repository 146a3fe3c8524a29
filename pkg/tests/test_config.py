import logging
import os
import re
from fractions import Fraction

import pytest

from reservelab.config import get_cfg
from reservelab.errors import PolicyError
from reservelab.policies import PolicyKind, PolicySpec, SoftScope, policy_from_cfg
from reservelab.utils import setup_logger


def _cfg(**policy):
    cfg = get_cfg()
    for key, value in policy.items():
        setattr(cfg.POLICY, key, value)
    return cfg


def test_defaults():
    cfg = get_cfg()
    assert cfg.VERSION == 1
    assert cfg.POLICY.KIND == ""
    assert cfg.POLICY.CATEGORY == "OBC"
    assert cfg.AUDIT.MAX_N is None
    assert tuple(cfg.AUDIT.CHECKS) == ("gap", "fairness", "waste")
    assert cfg.TEST.EXPECTED_RESULTS == []


def test_base_inheritance(repo_root):
    cfg = get_cfg()
    cfg.merge_from_file(os.path.join(repo_root, "configs", "cases", "example2_arrival_gap.yaml"))
    assert cfg.INSTANCE.endswith("example2_arrival.json")
    assert cfg.POLICY.KIND == "gap"
    assert cfg.POLICY.GAP == 10
    assert cfg.AUDIT.GAP_BOUND == 10
    policy = policy_from_cfg(cfg)
    assert policy == PolicySpec.gap(PolicySpec.elevated(10), 10)


def test_newer_version_is_refused(tmp_path):
    path = tmp_path / "future.yaml"
    path.write_text("VERSION: 2\nINSTANCE: example1\n")
    with pytest.raises(AssertionError):
        get_cfg().merge_from_file(str(path))


def test_rational_parameters_from_list():
    cfg = get_cfg()
    cfg.merge_from_list(["POLICY.KIND", "elevated", "POLICY.K", "19/2"])
    assert policy_from_cfg(cfg).boost_k == Fraction(19, 2)
    cfg = get_cfg()
    cfg.merge_from_list(["POLICY.KIND", "elevated", "POLICY.K", "9.5"])
    assert policy_from_cfg(cfg).boost_k == Fraction(19, 2)


def test_kind_with_gap_becomes_gap_policy():
    policy = policy_from_cfg(_cfg(KIND="elevated", K=10, GAP=5))
    assert policy.kind == PolicyKind.GAP
    assert policy.base == PolicySpec.elevated(10)
    assert policy.gap_bound == 5


def test_soft_scope_only_reaches_soft_policies():
    assert policy_from_cfg(_cfg(KIND="soft", SOFT_SCOPE="all")) == PolicySpec.soft(SoftScope.EVERYONE)
    assert policy_from_cfg(_cfg(KIND="hard", SOFT_SCOPE="all")) == PolicySpec.hard()
    gap = policy_from_cfg(_cfg(KIND="gap", BASE="soft", GAP=3))
    assert gap.base == PolicySpec.soft(SoftScope.GC_ONLY)


def test_category_is_carried():
    policy = policy_from_cfg(_cfg(KIND="elevated", K=5, CATEGORY="SC"))
    assert policy == PolicySpec.elevated(5, "SC")


def test_empty_kind_falls_back():
    default = PolicySpec.elevated(10)
    assert policy_from_cfg(get_cfg(), default) is default
    with pytest.raises(PolicyError):
        policy_from_cfg(get_cfg())


@pytest.mark.parametrize("policy", [dict(KIND="elevated"), dict(KIND="gap"), dict(KIND="bogus")])
def test_incomplete_policies(policy):
    with pytest.raises(PolicyError):
        policy_from_cfg(_cfg(**policy))


def test_logger_keeps_module_names(tmp_path, capsys):
    logger = setup_logger(str(tmp_path), color=False, name="reservelab_logging")
    assert setup_logger(str(tmp_path), color=False, name="reservelab_logging") is logger
    assert len(logger.handlers) == 2
    child = logging.getLogger("reservelab_logging.search")
    child.warning("shrunk")
    child.debug("detail")
    for h in logger.handlers:
        h.flush()
    text = (tmp_path / "log.txt").read_text()
    assert "reservelab_logging.search WARNING: shrunk" in text
    assert "detail" in text
    out = capsys.readouterr().out
    assert "shrunk" in out
    assert "detail" not in out


def test_requirements_are_imported(repo_root):
    with open(os.path.join(repo_root, "requirements.txt")) as f:
        names = [line.split("#")[0].strip() for line in f]
    sources = []
    for top in ("reservelab", "tests", "tools"):
        for folder, _, files in os.walk(os.path.join(repo_root, top)):
            for name in files:
                if name.endswith(".py"):
                    with open(os.path.join(folder, name)) as f:
                        sources.append(f.read())
    code = "\n".join(sources)
    for name in filter(None, names):
        assert re.search(r"^(import|from) {}\b".format(name), code, re.M), name
