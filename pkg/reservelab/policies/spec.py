from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from reservelab.errors import PolicyError
from reservelab.model import Category, format_score, parse_category

__all__ = ["PolicyKind", "SoftScope", "PolicySpec", "policy_from_dict", "policy_to_dict"]


class PolicyKind(str, Enum):
    HARD = "hard"
    SOFT = "soft"
    ELEVATED = "elevated"
    GAP = "gap"

    def __str__(self):
        return self.value


class SoftScope(str, Enum):
    # de-reserved seats go to general category candidates only
    GC_ONLY = "gc"
    # de-reserved seats go to every non-member, reserve members included
    EVERYONE = "all"

    def __str__(self):
        return self.value


def _rational(value, what) -> Fraction:
    if isinstance(value, float):
        value = repr(value)
    try:
        value = Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise PolicyError("cannot parse {} {!r}".format(what, value)) from e
    if value < 0:
        raise PolicyError("{} must be non-negative, got {}".format(what, value))
    return value


@dataclass(frozen=True)
class PolicySpec:
    """
    How reserve seats of ``category`` rank applicants. Every other reserve
    category is always a hard reserve; OPEN seats always use merit order.

    * ``hard``: members only, unfilled seats stay vacant.
    * ``soft``: members first, then the ``soft_scope`` pool instead of vacancy.
    * ``elevated``: everyone eligible, members compared with a boost of
      ``boost_k`` marks against non-members.
    * ``gap``: ``base`` policy, with seats of ``category`` restricted to
      raw scores no more than ``gap_bound`` below the open cutoff.
    """

    kind: PolicyKind
    boost_k: Optional[Fraction] = None
    gap_bound: Optional[Fraction] = None
    soft_scope: Optional[SoftScope] = None
    category: Category = Category.OBC
    base: Optional["PolicySpec"] = None

    def __post_init__(self):
        kind = PolicyKind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "category", parse_category(self.category))
        if not self.category.is_reserve:
            raise PolicyError("policy category must be a reserve label, got {}".format(
                self.category))
        if self.boost_k is not None:
            object.__setattr__(self, "boost_k", _rational(self.boost_k, "boost k"))
        if self.gap_bound is not None:
            object.__setattr__(self, "gap_bound", _rational(self.gap_bound, "gap bound D"))
        if self.soft_scope is not None:
            object.__setattr__(self, "soft_scope", SoftScope(self.soft_scope))

        needs = {
            PolicyKind.HARD: set(),
            PolicyKind.SOFT: {"soft_scope"},
            PolicyKind.ELEVATED: {"boost_k"},
            PolicyKind.GAP: {"gap_bound", "base"},
        }[kind]
        for name in ("boost_k", "gap_bound", "soft_scope", "base"):
            present = getattr(self, name) is not None
            if present and name not in needs:
                raise PolicyError("{} policy takes no {}".format(kind, name))
            if not present and name in needs:
                raise PolicyError("{} policy requires {}".format(kind, name))
        if kind == PolicyKind.GAP:
            if self.base.kind == PolicyKind.GAP:
                raise PolicyError("the base of a gap policy cannot itself be a gap policy")
            if self.base.category != self.category:
                raise PolicyError("gap policy and its base must target the same category")

    @classmethod
    def hard(cls, category=Category.OBC) -> "PolicySpec":
        return cls(PolicyKind.HARD, category=category)

    @classmethod
    def soft(cls, scope=SoftScope.GC_ONLY, category=Category.OBC) -> "PolicySpec":
        return cls(PolicyKind.SOFT, soft_scope=scope, category=category)

    @classmethod
    def elevated(cls, k, category=Category.OBC) -> "PolicySpec":
        return cls(PolicyKind.ELEVATED, boost_k=k, category=category)

    @classmethod
    def gap(cls, base: "PolicySpec", bound) -> "PolicySpec":
        return cls(PolicyKind.GAP, gap_bound=bound, base=base, category=base.category)

    @property
    def seat_policy(self) -> "PolicySpec":
        """
        The policy that ranks applicants for reserve seats (the base of a gap policy).
        """
        return self.base if self.kind == PolicyKind.GAP else self

    def describe(self) -> str:
        if self.kind == PolicyKind.HARD:
            return "hard"
        if self.kind == PolicyKind.SOFT:
            return "soft[{}]({})".format(self.category, self.soft_scope)
        if self.kind == PolicyKind.ELEVATED:
            return "elevated[{}](k={})".format(self.category, format_score(self.boost_k))
        return "gap(D={}) over {}".format(format_score(self.gap_bound), self.base.describe())


def policy_from_dict(d) -> PolicySpec:
    """
    Build a PolicySpec from its serialized form
    {"kind": ..., "k": ..., "D": ..., "soft_scope": ..., "base": ..., "category": ...}.
    The base of a "gap" policy is inferred when absent: "k" means elevated,
    "soft_scope" means soft, otherwise hard.
    """
    if isinstance(d, PolicySpec):
        return d
    if not isinstance(d, dict) or "kind" not in d:
        raise PolicyError("policy must be an object with a 'kind' key, got {!r}".format(d))
    try:
        kind = PolicyKind(str(d["kind"]).lower())
    except ValueError:
        raise PolicyError("unknown policy kind {!r}".format(d["kind"])) from None
    category = d.get("category", Category.OBC)
    k, bound, scope = d.get("k"), d.get("D"), d.get("soft_scope")

    if kind == PolicyKind.GAP:
        base = d.get("base")
        if isinstance(base, dict):
            base = policy_from_dict(dict(base, category=base.get("category", category)))
        else:
            if base is None:
                base = "elevated" if k is not None else "soft" if scope is not None else "hard"
            base = policy_from_dict({"kind": base, "k": k, "soft_scope": scope,
                                     "category": category})
        return PolicySpec.gap(base, bound)
    if kind == PolicyKind.HARD:
        return PolicySpec.hard(category)
    if kind == PolicyKind.SOFT:
        return PolicySpec.soft(scope or SoftScope.GC_ONLY, category)
    if k is None:
        raise PolicyError("elevated policy requires k")
    return PolicySpec.elevated(k, category)


def policy_to_dict(policy: PolicySpec) -> dict:
    out = {"kind": policy.kind.value, "category": policy.category.value}
    if policy.kind == PolicyKind.GAP:
        out["D"] = format_score(policy.gap_bound)
        base = policy_to_dict(policy.base)
        base.pop("category")
        out["base"] = base
    if policy.boost_k is not None:
        out["k"] = format_score(policy.boost_k)
    if policy.soft_scope is not None:
        out["soft_scope"] = policy.soft_scope.value
    return out
