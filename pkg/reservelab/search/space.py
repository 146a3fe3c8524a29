"""
Bounded spaces of instances and policies to search for counterexamples.

Enumeration is canonical up to relabeling: ids are ``i1 .. in`` in order of
descending score, score vectors are drawn as multisets from the grid, and
individuals with equal scores are listed by category label (which fixes
the id tie-break between them). Allocations depend on names only through
that tie-break, so no two enumerated instances are renamings of each other.
"""
import itertools
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Optional, Tuple

import numpy as np

from reservelab.model import (
    RESERVE_CATEGORIES,
    Category,
    Individual,
    Instance,
    parse_category,
    parse_score,
    validate_instance,
)
from reservelab.policies import PolicyKind, PolicySpec, SoftScope

__all__ = ["SearchSpace", "canonical_form"]

logger = logging.getLogger(__name__)


def _rationals(values) -> Tuple[Fraction, ...]:
    return tuple(parse_score(v) for v in values)


@dataclass(frozen=True)
class SearchSpace:
    max_n: int
    scores: Tuple[Fraction, ...]
    categories: Tuple[Category, ...] = (Category.GENERAL, Category.SC, Category.OBC)
    max_capacity: int = 3
    max_quota: int = 1
    min_n: int = 1
    min_capacity: int = 0
    distinct_scores: bool = True
    kinds: Tuple[PolicyKind, ...] = (PolicyKind.ELEVATED,)
    k_grid: Tuple[Fraction, ...] = (Fraction(10),)
    d_grid: Tuple[Fraction, ...] = (Fraction(10),)
    soft_scopes: Tuple[SoftScope, ...] = (SoftScope.GC_ONLY,)
    target: Category = Category.OBC
    # 0 enumerates, otherwise the number of seeded samples
    samples: int = 0
    seed: Optional[int] = None
    # searched before the enumerated (or sampled) instances
    include: Tuple[Instance, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "scores", tuple(sorted(set(_rationals(self.scores)), reverse=True)))
        object.__setattr__(self, "categories", tuple(parse_category(c) for c in self.categories))
        object.__setattr__(self, "kinds", tuple(PolicyKind(k) for k in self.kinds))
        object.__setattr__(self, "k_grid", _rationals(self.k_grid))
        object.__setattr__(self, "d_grid", _rationals(self.d_grid))
        object.__setattr__(self, "soft_scopes", tuple(SoftScope(s) for s in self.soft_scopes))
        object.__setattr__(self, "target", parse_category(self.target))
        object.__setattr__(self, "include", tuple(self.include))
        assert self.max_n >= 0 and self.max_capacity >= 0 and self.max_quota >= 0, self
        assert Category.OPEN not in self.categories, "OPEN is not a membership"

    @classmethod
    def from_cfg(cls, cfg, include=()) -> "SearchSpace":
        s = cfg.SEARCH
        return cls(
            max_n=s.MAX_N,
            min_n=s.MIN_N,
            scores=s.SCORES,
            categories=s.CATEGORIES,
            max_capacity=s.MAX_CAPACITY,
            min_capacity=s.MIN_CAPACITY,
            max_quota=s.MAX_QUOTA,
            distinct_scores=s.DISTINCT_SCORES,
            kinds=s.KINDS,
            k_grid=s.K_GRID,
            d_grid=s.D_GRID,
            soft_scopes=s.SOFT_SCOPES,
            target=cfg.POLICY.CATEGORY,
            samples=s.SAMPLES,
            seed=None if cfg.SEED < 0 else cfg.SEED,
            include=include,
        )

    @property
    def quota_categories(self) -> Tuple[Category, ...]:
        return tuple(c for c in RESERVE_CATEGORIES if c in self.categories)

    @property
    def largest_roster(self) -> int:
        if self.distinct_scores:
            return min(self.max_n, len(self.scores))
        return self.max_n

    def _sizes(self):
        return range(max(self.min_n, 1), self.largest_roster + 1)

    def _quota_vectors(self, capacity):
        ranges = [range(min(self.max_quota, capacity) + 1) for _ in self.quota_categories]
        for quotas in itertools.product(*ranges):
            if sum(quotas) <= capacity:
                yield dict(zip(self.quota_categories, quotas))

    def build(self, roster, capacity: int, reserved) -> Instance:
        """
        The instance of `roster`, a sequence of (score, label) pairs in id
        order, under `capacity` and `reserved` quotas.
        """
        individuals = [
            Individual(id="i{}".format(k + 1), memberships=frozenset([c]), score=s)
            for k, (s, c) in enumerate(roster)
        ]
        return Instance.create(
            individuals, capacity, reserved, distinct_scores=self.distinct_scores
        )

    def rosters(
        self, sizes: Optional[Iterable[int]] = None
    ) -> Iterator[Tuple[Tuple[Fraction, Category], ...]]:
        """
        Every canonical roster as (score, label) pairs in id order, smaller
        rosters first. `sizes` defaults to the sizes of the space.
        """
        pick = itertools.combinations if self.distinct_scores else itertools.combinations_with_replacement
        for n in self._sizes() if sizes is None else sizes:
            for scores in pick(self.scores, n):
                for labels in itertools.product(self.categories, repeat=n):
                    if any(
                        scores[k] == scores[k + 1] and labels[k].value > labels[k + 1].value
                        for k in range(n - 1)
                    ):
                        continue
                    yield tuple(zip(scores, labels))

    def configurations(self) -> Iterator[Tuple[int, Dict[Category, int]]]:
        """
        Every (capacity, reserved quotas) pair of the space.
        """
        for capacity in range(self.min_capacity, self.max_capacity + 1):
            for reserved in self._quota_vectors(capacity):
                yield capacity, reserved

    def enumerate(self) -> Iterator[Instance]:
        """
        Every canonical instance of the space, smaller rosters first.
        """
        for roster in self.rosters():
            for capacity, reserved in self.configurations():
                yield self.build(roster, capacity, reserved)

    def sample(self, index: int) -> Optional[Instance]:
        """
        The `index`-th random instance. The generator is keyed by
        (seed, index) alone, so any worker can draw any sample.
        """
        sizes = self._sizes()
        if not len(sizes) or self.min_capacity > self.max_capacity:
            return None
        rng = np.random.default_rng(np.random.SeedSequence(entropy=self.seed, spawn_key=(index,)))
        n = int(rng.integers(sizes[0], sizes[-1] + 1))
        picked = rng.choice(len(self.scores), size=n, replace=not self.distinct_scores)
        scores = sorted((self.scores[int(k)] for k in picked), reverse=True)
        labels = [self.categories[int(k)] for k in rng.integers(0, len(self.categories), size=n)]
        capacity = int(rng.integers(self.min_capacity, self.max_capacity + 1))
        reserved, left = {}, capacity
        for c in self.quota_categories:
            reserved[c] = int(rng.integers(0, min(self.max_quota, left) + 1))
            left -= reserved[c]
        return self.build(tuple(zip(scores, labels)), capacity, reserved)

    def instances(self) -> Iterator[Instance]:
        """
        The included instances, then either the canonical enumeration or
        `samples` seeded draws.
        """
        for inst in self.include:
            yield inst
        if self.samples <= 0:
            yield from self.enumerate()
            return
        if self.seed is None:
            # fresh entropy, logged so the run can be repeated
            entropy = np.random.SeedSequence().entropy
            logger.info("Sampling with fresh seed {}".format(entropy))
            yield from replace(self, seed=entropy, include=()).instances()
            return
        for index in range(self.samples):
            inst = self.sample(index)
            if inst is not None:
                yield inst

    def policies(self) -> Iterator[PolicySpec]:
        """
        The policy family: each kind over its parameter grid. A gap policy
        is enumerated over an elevated base for every k, times every bound.
        """
        for kind in self.kinds:
            if kind == PolicyKind.HARD:
                yield PolicySpec.hard(self.target)
            elif kind == PolicyKind.SOFT:
                for scope in self.soft_scopes:
                    yield PolicySpec.soft(scope, self.target)
            elif kind == PolicyKind.ELEVATED:
                for k in self.k_grid:
                    yield PolicySpec.elevated(k, self.target)
            else:
                for k in self.k_grid:
                    for bound in self.d_grid:
                        yield PolicySpec.gap(PolicySpec.elevated(k, self.target), bound)


def canonical_form(inst: Instance) -> Instance:
    """
    Relabel ids to ``i1 .. in`` by descending score, the way
    :meth:`SearchSpace.enumerate` names them. Ties are ordered by label.
    """
    ranked = sorted(
        inst.individuals,
        key=lambda i: (-i.score, sorted(c.value for c in i.memberships)),
    )
    renamed = tuple(
        Individual(id="i{}".format(k + 1), memberships=i.memberships, score=i.score)
        for k, i in enumerate(ranked)
    )
    return validate_instance(inst.replace(individuals=renamed))
