"""The unbalanced 7-label adjective usability scale and its transforms.

The scale ``{None, Worst Imaginable, Poor, OK, Good, Excellent, Best
Imaginable}`` is not uniformly distributed over [0, 100]; its labels borrow
their semantics from terms of the 3/5/9 hierarchy ("term components"):

    None            <- s0@S5
    Worst Imaginable<- s1@S5, s2@S9
    Poor            <- s3@S9
    OK              <- s4@S9, s2@S5
    Good            <- s3@S5, s6@S9
    Excellent       <- s7@S9
    Best Imaginable <- s8@S9

A numeric usability score in [0, 100] maps onto the scale by expressing it at
hierarchy level 2 or 3 (depending on which band of the score axis it falls
in) and adopting the label owning the resulting term.  Every value can be
pushed down to S9 and back: ``unify_to_s9(from_score(x))`` always equals
``delta(8 * x / 100)`` on S9, exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .linguistic import HIERARCHY, S9, TwoTuple, delta, delta_inverse, transform_level

__all__ = [
    "SUS_LABELS",
    "TERM_COMPONENTS",
    "LEVEL3_CENTERS",
    "UnbalancedSusValue",
    "tf_sus",
    "unify_to_s9",
    "retranslate_from_s9",
]

SUS_LABELS = (
    "None",
    "Worst Imaginable",
    "Poor",
    "OK",
    "Good",
    "Excellent",
    "Best Imaginable",
)

# label -> term components as (hierarchy level, term index)
TERM_COMPONENTS: dict[str, tuple[tuple[int, int], ...]] = {
    "None": ((2, 0),),
    "Worst Imaginable": ((2, 1), (3, 2)),
    "Poor": ((3, 3),),
    "OK": ((3, 4), (2, 2)),
    "Good": ((2, 3), (3, 6)),
    "Excellent": ((3, 7),),
    "Best Imaginable": ((3, 8),),
}

# each label's representative position on S9
LEVEL3_CENTERS = {
    "None": 0,
    "Worst Imaginable": 2,
    "Poor": 3,
    "OK": 4,
    "Good": 6,
    "Excellent": 7,
    "Best Imaginable": 8,
}

# term (level, index) -> owning label; each hierarchy term belongs to one label
_OWNER = {
    component: label
    for label, components in TERM_COMPONENTS.items()
    for component in components
}


@dataclass(frozen=True)
class UnbalancedSusValue:
    """A 2-tuple on the adjective scale.

    ``level`` records which hierarchy level (2 or 3) the symbolic translation
    ``alpha`` is expressed at; labels whose only term component lives at level
    3 always carry a level-3 alpha.
    """

    label: str
    alpha: float
    level: int

    def __post_init__(self):
        if self.label not in TERM_COMPONENTS:
            raise DomainError(f"unknown adjective label {self.label!r}")
        if not -0.5 <= self.alpha < 0.5:
            raise DomainError(f"alpha {self.alpha} outside [-0.5, 0.5)")
        levels = {lv for lv, _ in TERM_COMPONENTS[self.label]}
        if self.level not in levels:
            raise DomainError(
                f"label {self.label!r} has no term component at level {self.level}"
            )

    @property
    def label_index(self) -> int:
        return SUS_LABELS.index(self.label)

    def __repr__(self):
        return f"({self.label},{self.alpha:+.4g})@L{self.level}"

    def to_json(self) -> dict:
        return {
            "scale": "SUS",
            "label": self.label,
            "alpha": self.alpha,
            "level": self.level,
        }


def tf_sus(score: float) -> UnbalancedSusValue:
    """Map a usability score in [0, 100] onto the adjective scale.

    The score is expressed at hierarchy level 2 when it falls in
    [0, 25] or [50, 75] and at level 3 otherwise; the 2-tuple of that level
    then adopts the label owning its term.
    """
    if not 0 <= score <= 100:
        raise DomainError(f"usability score {score} outside [0, 100]")
    t = 2 if (score <= 25 or 50 <= score <= 75) else 3
    level_set = HIERARCHY.level(t)
    tup = delta(level_set.g * score / 100.0, level_set)
    label = _OWNER[(t, tup.index)]
    return UnbalancedSusValue(label, tup.alpha, t)


def unify_to_s9(value: UnbalancedSusValue) -> TwoTuple:
    """Push an adjective value down to S9 through its term component."""
    component = next(
        (lv, idx) for lv, idx in TERM_COMPONENTS[value.label] if lv == value.level
    )
    level_set = HIERARCHY.level(value.level)
    carrier = TwoTuple(component[1], value.alpha, level_set)
    return transform_level(carrier, S9)


def retranslate_from_s9(value: TwoTuple) -> UnbalancedSusValue:
    """Express an S9 2-tuple back on the adjective scale.

    Picks the label with the nearest S9 center, breaking exact ties toward
    the higher label.  Labels bridged by a level-2 term (None, Worst
    Imaginable, OK, Good) carry their alpha at level 2; pure level-3 labels
    carry it at level 3.
    """
    if value.term_set != S9:
        raise DomainError("retranslation expects a value on S9")
    beta3 = delta_inverse(value)
    best_label = _nearest_label(beta3)
    level2 = next(
        (idx for lv, idx in TERM_COMPONENTS[best_label] if lv == 2), None
    )
    if level2 is not None:
        return UnbalancedSusValue(best_label, beta3 / 2.0 - level2, 2)
    return UnbalancedSusValue(best_label, beta3 - LEVEL3_CENTERS[best_label], 3)


def _nearest_label(beta3: float) -> str:
    best_label = SUS_LABELS[0]
    best_dist = abs(beta3 - LEVEL3_CENTERS[best_label])
    for label in SUS_LABELS[1:]:
        dist = abs(beta3 - LEVEL3_CENTERS[label])
        if dist <= best_dist:  # ties go to the higher label
            best_label, best_dist = label, dist
    return best_label


def sus_value_from_json(doc: dict) -> UnbalancedSusValue:
    """Rebuild an adjective value from its ``{scale, label, alpha, level}`` form."""
    if doc.get("scale") != "SUS":
        raise DomainError(f"not an adjective-scale value: {doc!r}")
    return UnbalancedSusValue(doc["label"], float(doc["alpha"]), int(doc["level"]))
