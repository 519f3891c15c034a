"""Raw test responses -> scores -> per-(user, role) decision matrices.

Four test kinds feed the pipeline:

* SUS: the 10-item Likert questionnaire, scored 0-100.
* NPS: a single 0-10 likelihood-to-recommend answer, regressed onto the SUS
  scale with ``(ltr - 1.33) / 0.08`` and clamped to [0, 100].
* UT: a scripted task list; per task the participant reports time, success
  and a satisfaction term on S5.  The per-user satisfaction mean is the
  linguistic value; efficiency/success percentages feed the report only.
* ACC: an expert-entered A/AA/AAA conformance verdict on S3.

A user playing a role fills one row per alternative; the resulting
individual decision matrix holds heterogeneous linguistic cells (adjective
scale for SUS/NPS, S5 for UT, S3 for ACC) with unanswered tests left absent
rather than zeroed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import AuthorizationError, ValidationError
from .linguistic import S3, S5, TwoTuple, delta, weighted_average
from .sus_scale import UnbalancedSusValue, tf_sus

__all__ = [
    "SUS",
    "NPS",
    "UT",
    "ACC",
    "TEST_KINDS",
    "ACC_LABELS",
    "SusResponse",
    "NpsResponse",
    "UtTaskDefinition",
    "UtTaskResponse",
    "UtResponse",
    "AccResponse",
    "IndividualDecisionMatrix",
    "sus_score",
    "nps_to_sus",
    "ut_user_metrics",
    "ut_task_role_metrics",
    "build_id_matrix",
]

SUS = "SUS"
NPS = "NPS"
UT = "UT"
ACC = "ACC"
TEST_KINDS = (SUS, NPS, UT, ACC)

ACC_LABELS = ("A", "AA", "AAA")

# NPS segment boundaries
PROMOTER_MIN = 9
PASSIVE_MIN = 7


@dataclass(frozen=True)
class SusResponse:
    """Ten Likert answers, each in 1..5; odd items positive, even negative."""

    items: tuple[int, ...]

    def __post_init__(self):
        if len(self.items) != 10:
            raise ValidationError(f"SUS needs exactly 10 items, got {len(self.items)}")
        bad = [x for x in self.items if not (isinstance(x, int) and 1 <= x <= 5)]
        if bad:
            raise ValidationError(f"SUS items outside 1..5: {bad}")


@dataclass(frozen=True)
class NpsResponse:
    ltr: int

    def __post_init__(self):
        if not (isinstance(self.ltr, int) and 0 <= self.ltr <= 10):
            raise ValidationError(f"LTR answer {self.ltr!r} outside 0..10")


@dataclass(frozen=True)
class UtTaskDefinition:
    id: str
    description: str
    max_time_s: float

    def __post_init__(self):
        if self.max_time_s <= 0:
            raise ValidationError(f"task {self.id}: max_time must be positive")


@dataclass(frozen=True)
class UtTaskResponse:
    task_id: str
    time_s: float
    success: bool
    satisfaction: int  # term index on S5

    def __post_init__(self):
        if self.time_s < 0:
            raise ValidationError(f"task {self.task_id}: negative time")
        if not 0 <= self.satisfaction <= 4:
            raise ValidationError(
                f"task {self.task_id}: satisfaction {self.satisfaction} outside 0..4"
            )


@dataclass(frozen=True)
class UtResponse:
    """A complete usability-test submission: one answer per defined task."""

    tasks: tuple[UtTaskResponse, ...]


@dataclass(frozen=True)
class AccResponse:
    label: str

    def __post_init__(self):
        if self.label not in ACC_LABELS:
            raise ValidationError(f"accessibility label {self.label!r} not in {ACC_LABELS}")

    @property
    def term_index(self) -> int:
        return ACC_LABELS.index(self.label)


@dataclass
class IndividualDecisionMatrix:
    """Linguistic cells of one (user, role) over alternatives x criteria.

    ``cells[(alternative_id, criterion_id)]`` holds an UnbalancedSusValue or
    a TwoTuple depending on the criterion; missing keys mean the test was not
    answered for that alternative.
    """

    user_id: str
    role_id: str
    alternatives: tuple[str, ...]
    criteria: tuple[str, ...]
    cells: dict[tuple[str, str], UnbalancedSusValue | TwoTuple] = field(
        default_factory=dict
    )

    def cell(self, alternative_id: str, criterion_id: str):
        return self.cells.get((alternative_id, criterion_id))

    def is_empty(self) -> bool:
        return not self.cells


def sus_score(response: SusResponse) -> float:
    """SUS total: ``2.5 * sum((odd - 1) + (5 - even))``, in [0, 100]."""
    odd = sum(response.items[i] - 1 for i in range(0, 10, 2))
    even = sum(5 - response.items[i] for i in range(1, 10, 2))
    return 2.5 * (odd + even)


def nps_to_sus(response: NpsResponse) -> float:
    """Project an LTR answer onto the SUS scale, clamped to [0, 100]."""
    value = (response.ltr - 1.33) / 0.08
    return min(100.0, max(0.0, value))


def _check_task_coverage(
    responses: Sequence[UtTaskResponse], definitions: Sequence[UtTaskDefinition]
) -> dict[str, UtTaskDefinition]:
    defs = {d.id: d for d in definitions}
    seen: set[str] = set()
    duplicates = []
    unknown = []
    for r in responses:
        if r.task_id in seen:
            duplicates.append(r.task_id)
        seen.add(r.task_id)
        if r.task_id not in defs:
            unknown.append(r.task_id)
    missing = [tid for tid in defs if tid not in seen]
    problems = []
    if missing:
        problems.append(f"missing tasks: {', '.join(missing)}")
    if duplicates:
        problems.append(f"duplicate tasks: {', '.join(sorted(set(duplicates)))}")
    if unknown:
        problems.append(f"unknown tasks: {', '.join(sorted(set(unknown)))}")
    if problems:
        raise ValidationError("usability test incomplete: " + "; ".join(problems))
    return defs


def is_efficient(response: UtTaskResponse, definition: UtTaskDefinition) -> bool:
    """On-time completion; finishing exactly at the limit counts."""
    return response.time_s <= definition.max_time_s


def ut_user_metrics(
    responses: Sequence[UtTaskResponse], definitions: Sequence[UtTaskDefinition]
) -> tuple[float, float, TwoTuple]:
    """Per-user UT summary: (efficiency %, success %, mean satisfaction on S5)."""
    defs = _check_task_coverage(responses, definitions)
    d = len(definitions)
    efficient = sum(1 for r in responses if is_efficient(r, defs[r.task_id]))
    succeeded = sum(1 for r in responses if r.success)
    mean_sat = math.fsum(r.satisfaction for r in responses) / d
    return 100.0 * efficient / d, 100.0 * succeeded / d, delta(mean_sat, S5)


def ut_task_role_metrics(
    per_user: Mapping[str, UtTaskResponse],
    definition: UtTaskDefinition,
    user_weights: Mapping[str, float],
) -> tuple[float, float, TwoTuple] | None:
    """Task-level summary across the users who played one role.

    Efficiency/success are plain percentages over the respondents; the
    satisfaction 2-tuple is weight-averaged with the role's user weights.
    Returns None when nobody answered the task (absent, not zero).
    """
    if not per_user:
        return None
    n = len(per_user)
    efficient = sum(1 for r in per_user.values() if is_efficient(r, definition))
    succeeded = sum(1 for r in per_user.values() if r.success)
    values = [TwoTuple(r.satisfaction, 0.0, S5) for r in per_user.values()]
    weights = [user_weights.get(uid, 0.0) for uid in per_user]
    if math.fsum(weights) <= 0:  # respondents outside the weight vector
        weights = [1.0] * n
    satisfaction = weighted_average(values, weights)
    return 100.0 * efficient / n, 100.0 * succeeded / n, satisfaction


def build_id_matrix(
    user_id: str,
    role_id: str,
    is_expert: bool,
    alternatives: Sequence[str],
    criteria: Mapping[str, str],
    responses: Mapping[tuple[str, str], object],
    ut_definitions: Sequence[UtTaskDefinition] = (),
) -> IndividualDecisionMatrix:
    """Assemble one individual decision matrix from validated responses.

    ``criteria`` maps criterion id -> test kind; ``responses`` maps
    ``(alternative_id, criterion_id)`` to the matching response object.
    Accessibility cells are restricted to experts.
    """
    matrix = IndividualDecisionMatrix(
        user_id=user_id,
        role_id=role_id,
        alternatives=tuple(alternatives),
        criteria=tuple(criteria),
    )
    for (alt_id, crit_id), response in responses.items():
        kind = criteria.get(crit_id)
        if kind is None:
            raise ValidationError(f"response for unknown criterion {crit_id!r}")
        if alt_id not in matrix.alternatives:
            raise ValidationError(f"response for unknown alternative {alt_id!r}")
        if kind == SUS:
            cell = tf_sus(sus_score(response))
        elif kind == NPS:
            cell = tf_sus(nps_to_sus(response))
        elif kind == UT:
            _, _, cell = ut_user_metrics(response.tasks, ut_definitions)
        elif kind == ACC:
            if not is_expert:
                raise AuthorizationError(
                    f"user {user_id} is not an expert; accessibility verdicts "
                    "are expert-only"
                )
            cell = TwoTuple(response.term_index, 0.0, S3)
        else:
            raise ValidationError(f"unsupported test kind {kind!r}")
        matrix.cells[(alt_id, crit_id)] = cell
    return matrix


def nps_segments(answers: Iterable[int]) -> tuple[int, int, int]:
    """(promoters, passives, detractors) counts for a batch of LTR answers."""
    promoters = passives = detractors = 0
    for a in answers:
        if a >= PROMOTER_MIN:
            promoters += 1
        elif a >= PASSIVE_MIN:
            passives += 1
        else:
            detractors += 1
    return promoters, passives, detractors
