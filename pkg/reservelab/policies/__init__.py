from .build import POLICY_REGISTRY, build_category_order, policy_from_cfg
from .orders import (
    PriorityOrder,
    baseline_order,
    elevated_order,
    elevated_precedes,
    hard_order,
    merit_key,
    soft_order,
)
from .spec import PolicyKind, PolicySpec, SoftScope, policy_from_dict, policy_to_dict

__all__ = [k for k in globals().keys() if not k.startswith("_")]
