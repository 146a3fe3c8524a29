from typing import Optional

from fvcore.common.registry import Registry

from reservelab.errors import PolicyError
from reservelab.model import Category, Instance
from .orders import PriorityOrder, baseline_order, elevated_order, hard_order, soft_order
from .spec import PolicyKind, PolicySpec, policy_from_dict

POLICY_REGISTRY = Registry("POLICY")
POLICY_REGISTRY.__doc__ = """
Registry for reserve-seat policies, keyed by `PolicySpec.kind`.

The registered object will be called with `obj(inst, category, policy)`
and expected to return a `PriorityOrder` for the policy's target category.
"""


@POLICY_REGISTRY.register()
def hard(inst: Instance, c: Category, policy: PolicySpec) -> PriorityOrder:
    return hard_order(inst, c)


@POLICY_REGISTRY.register()
def soft(inst: Instance, c: Category, policy: PolicySpec) -> PriorityOrder:
    return soft_order(inst, c, policy.soft_scope)


@POLICY_REGISTRY.register()
def elevated(inst: Instance, c: Category, policy: PolicySpec) -> PriorityOrder:
    return elevated_order(inst, c, policy.boost_k)


def build_category_order(inst: Instance, c: Category, policy: PolicySpec) -> PriorityOrder:
    """
    The priority order of seat category `c` under `policy`: merit order for
    OPEN, the policy's order for its target category, hard order for every
    other reserve category. A gap policy ranks with its base.
    """
    if c == Category.OPEN:
        return baseline_order(inst)
    seat_policy = policy.seat_policy
    if seat_policy.kind == PolicyKind.HARD or c != seat_policy.category:
        return hard_order(inst, c)
    return POLICY_REGISTRY.get(seat_policy.kind.value)(inst, c, seat_policy)


def policy_from_cfg(cfg, default: Optional[PolicySpec] = None) -> PolicySpec:
    """
    Build the PolicySpec described by ``cfg.POLICY``. A hard, soft or
    elevated kind with ``POLICY.GAP`` set becomes a gap policy over that
    base. An empty ``POLICY.KIND`` falls back to `default` (the instance
    file's policy).
    """
    p = cfg.POLICY
    kind = p.KIND.strip().lower()
    if not kind:
        if default is None:
            raise PolicyError("no policy given: set POLICY.KIND (--policy) or a 'policy' key")
        return default
    base = p.BASE.strip().lower() or None
    if kind != PolicyKind.GAP.value and p.GAP is not None:
        kind, base = PolicyKind.GAP.value, kind
    d = {"kind": kind, "category": p.CATEGORY}
    if base is not None:
        d["base"] = base
    if p.K is not None:
        d["k"] = str(p.K)
    if p.GAP is not None:
        d["D"] = str(p.GAP)
    if PolicyKind.SOFT.value in (kind, base):
        d["soft_scope"] = p.SOFT_SCOPE
    return policy_from_dict(d)
