"""2-tuple linguistic representation and the 3/5/9 linguistic hierarchy.

A linguistic term set ``S = {s_0, ..., s_g}`` holds ``g + 1`` ordered labels.
A value is carried as a 2-tuple ``(s_i, alpha)`` with ``alpha in [-0.5, 0.5)``,
equivalent to the continuous ``beta = i + alpha in [0, g]``.  Conversions are
lossless: ``delta`` and ``delta_inverse`` are exact inverses of each other.

The hierarchy used throughout the package nests three term sets of
granularities 3, 5 and 9 (each level doubles the partition of the previous
one), so the scale factor between any two levels is an exact power of two and
level transforms round-trip without floating-point error.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError

__all__ = [
    "TermSet",
    "TwoTuple",
    "LinguisticHierarchy",
    "S3",
    "S5",
    "S9",
    "HIERARCHY",
    "delta",
    "delta_inverse",
    "transform_level",
    "weighted_average",
]


@dataclass(frozen=True)
class TermSet:
    """An ordered linguistic scale with labels indexed 0..g."""

    name: str
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) < 2:
            raise DomainError(f"term set {self.name!r} needs at least 2 labels")

    @property
    def granularity(self) -> int:
        return len(self.labels)

    @property
    def g(self) -> int:
        """Largest term index."""
        return len(self.labels) - 1

    def __repr__(self):  # keeps matrix dumps readable
        return f"TermSet({self.name})"


@dataclass(frozen=True)
class TwoTuple:
    """A linguistic 2-tuple ``(s_index, alpha)`` bound to its term set."""

    index: int
    alpha: float
    term_set: TermSet

    def __post_init__(self):
        g = self.term_set.g
        if not 0 <= self.index <= g:
            raise DomainError(
                f"term index {self.index} outside [0, {g}] of {self.term_set.name}"
            )
        if not -0.5 <= self.alpha < 0.5:
            raise DomainError(f"alpha {self.alpha} outside [-0.5, 0.5)")
        beta = self.index + self.alpha
        if beta < 0 or beta > g:
            raise DomainError(
                f"beta {beta} outside [0, {g}] of {self.term_set.name}"
            )

    @property
    def label(self) -> str:
        return self.term_set.labels[self.index]

    @property
    def beta(self) -> float:
        return self.index + self.alpha

    def __repr__(self):
        return f"(s{self.index}^{self.term_set.granularity},{self.alpha:+.4g})"

    def to_json(self) -> dict:
        return {"set": self.term_set.name, "index": self.index, "alpha": self.alpha}


def delta(beta: float, term_set: TermSet) -> TwoTuple:
    """Convert ``beta in [0, g]`` to the equivalent 2-tuple.

    Halves round up, so ``delta(2.5)`` yields ``(s_3, -0.5)``.
    """
    g = term_set.g
    if math.isnan(beta) or beta < 0 or beta > g:
        raise DomainError(f"beta {beta} outside [0, {g}] of {term_set.name}")
    index = math.floor(beta + 0.5)
    return TwoTuple(index, beta - index, term_set)


def delta_inverse(value: TwoTuple) -> float:
    """Recover the continuous ``beta`` carried by a 2-tuple."""
    return value.index + value.alpha


@dataclass(frozen=True)
class LinguisticHierarchy:
    """Nested term sets where level ``t + 1`` has granularity ``2 n(t) - 1``."""

    levels: tuple[TermSet, ...]

    def __post_init__(self):
        for a, b in zip(self.levels, self.levels[1:]):
            if b.granularity != 2 * a.granularity - 1:
                raise DomainError(
                    f"level granularities {a.granularity} -> {b.granularity} "
                    "do not double the partition"
                )

    def level_of(self, term_set: TermSet) -> int:
        """1-based level of a term set inside the hierarchy."""
        for i, lv in enumerate(self.levels, start=1):
            if lv is term_set or lv == term_set:
                return i
        raise DomainError(f"{term_set.name} is not a level of the hierarchy")

    def level(self, t: int) -> TermSet:
        if not 1 <= t <= len(self.levels):
            raise DomainError(f"hierarchy has no level {t}")
        return self.levels[t - 1]


S3 = TermSet("S3", ("A", "AA", "AAA"))
S5 = TermSet(
    "S5",
    ("Unsatisfied", "Dissatisfied", "Indifferent", "Satisfied", "Very satisfied"),
)
S9 = TermSet("S9", tuple(f"s{i}" for i in range(9)))

HIERARCHY = LinguisticHierarchy((S3, S5, S9))


def transform_level(
    value: TwoTuple, target: TermSet, hierarchy: LinguisticHierarchy = HIERARCHY
) -> TwoTuple:
    """Re-express a 2-tuple at another hierarchy level.

    ``beta' = beta * (n(t') - 1) / (n(t) - 1)``; the identity transform
    returns the value unchanged and cross-level round trips are exact.
    """
    t_from = hierarchy.level_of(value.term_set)
    t_to = hierarchy.level_of(target)
    if t_from == t_to:
        return value
    scale = target.g / value.term_set.g
    return delta(delta_inverse(value) * scale, target)


def weighted_average(values: Sequence[TwoTuple], weights: Sequence[float]) -> TwoTuple:
    """2-tuple weighted average (2TWA) over one term set.

    Computes ``delta(sum(beta_k * w_k) / sum(w_k))``; invariant under uniform
    scaling of the weights.
    """
    if len(values) != len(weights):
        raise DomainError("values and weights differ in length")
    if not values:
        raise DomainError("cannot average an empty collection")
    term_set = values[0].term_set
    for v in values[1:]:
        if v.term_set != term_set:
            raise DomainError(
                f"mixed term sets in 2TWA: {term_set.name} vs {v.term_set.name}"
            )
    if any(w < 0 for w in weights):
        raise DomainError("2TWA weights must be non-negative")
    total = math.fsum(weights)
    if total <= 0:
        raise DomainError("2TWA needs at least one strictly positive weight")
    if len(values) == 1:
        return values[0]
    acc = math.fsum(delta_inverse(v) * w for v, w in zip(values, weights))
    return delta(acc / total, term_set)


def two_tuple_from_json(doc: dict) -> TwoTuple:
    """Rebuild a 2-tuple from its ``{set, index, alpha}`` wire form."""
    by_name = {ts.name: ts for ts in (S3, S5, S9)}
    try:
        term_set = by_name[doc["set"]]
    except KeyError:
        raise DomainError(f"unknown term set {doc.get('set')!r}") from None
    return TwoTuple(int(doc["index"]), float(doc["alpha"]), term_set)
