"""End-to-end evaluation: submissions -> matrices -> aggregates -> rankings.

This module is the single computation path shared by the HTTP service and
the command line, which guarantees both produce identical result bundles for
identical inputs.  Evaluation is deterministic: users, roles, alternatives,
criteria and tasks are always traversed in project declaration order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import fahp
from .aggregation import (
    UcdVector,
    UnifiedDecisionMatrix,
    aggregate_global,
    aggregate_role,
    role_user_weights,
    ucd_vector,
    unify_matrix,
)
from .errors import ValidationError
from .project import ProjectConfig, Submission
from .scoring import (
    ACC,
    AccResponse,
    IndividualDecisionMatrix,
    NPS,
    NpsResponse,
    SUS,
    SusResponse,
    UT,
    UtResponse,
    UtTaskResponse,
    build_id_matrix,
    ut_task_role_metrics,
)
from .sus_scale import UnbalancedSusValue, retranslate_from_s9
from .topsis import ClosenessResult, rank_all

__all__ = ["EvaluationResult", "TaskMetricRow", "evaluate", "parse_payload"]


@dataclass(frozen=True)
class TaskMetricRow:
    scope: str  # role id or "all"
    alternative_id: str
    task_id: str
    efficiency_pct: float
    success_pct: float
    satisfaction: object  # TwoTuple on S5


@dataclass
class EvaluationResult:
    project: ProjectConfig
    criteria_weights: fahp.CriteriaWeights
    id_matrices: list[IndividualDecisionMatrix]
    uid_matrices: dict[tuple[str, str], UnifiedDecisionMatrix]
    role_matrices: dict[str, UnifiedDecisionMatrix]
    role_ucd: dict[str, UcdVector]
    global_matrix: UnifiedDecisionMatrix | None
    global_ucd: UcdVector | None
    role_rankings: dict[str, ClosenessResult]
    global_ranking: ClosenessResult | None
    role_aur: dict[str, tuple[UnbalancedSusValue, ...]]
    global_aur: tuple[UnbalancedSusValue, ...] | None
    nps_answers: dict[str, list[int]]  # alternative -> raw LTR answers
    acc_verdicts: dict[str, list[tuple[str, str]]]  # alternative -> (user, label)
    task_metrics: list[TaskMetricRow]
    warnings: list[str] = field(default_factory=list)

    @property
    def insufficient(self) -> bool:
        return self.global_ranking is None


def parse_payload(test: str, payload: Mapping) -> object:
    """Turn a raw submission payload into its typed response object."""
    try:
        if test == SUS:
            return SusResponse(tuple(int(x) for x in payload["items"]))
        if test == NPS:
            return NpsResponse(int(payload["ltr"]))
        if test == UT:
            tasks = tuple(
                UtTaskResponse(
                    task_id=t["task"],
                    time_s=float(t["time_s"]),
                    success=bool(t["success"]),
                    satisfaction=int(t["satisfaction"]),
                )
                for t in payload["tasks"]
            )
            return UtResponse(tasks)
        if test == ACC:
            return AccResponse(payload["label"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed {test} payload: {exc}") from None
    raise ValidationError(f"unknown test kind {test!r}")


def _group_by_user_role(
    submissions: Sequence[Submission], config: ProjectConfig
) -> dict[tuple[str, str], dict[tuple[str, str], object]]:
    """(user, role) -> (alternative, criterion) -> typed response."""
    kind_to_crit = {c.kind: c.id for c in config.criteria}
    known_users = config.user_by_id()
    known_roles = set(config.role_ids())
    known_alts = set(config.alternative_ids())
    grouped: dict[tuple[str, str], dict[tuple[str, str], object]] = {}
    for sub in submissions:
        if sub.user_id not in known_users:
            raise ValidationError(f"submission from unregistered user {sub.user_id!r}")
        if sub.role_id not in known_roles:
            raise ValidationError(f"submission under unknown role {sub.role_id!r}")
        if sub.alternative_id not in known_alts:
            raise ValidationError(
                f"submission for unknown alternative {sub.alternative_id!r}"
            )
        crit_id = kind_to_crit.get(sub.test)
        if crit_id is None:
            raise ValidationError(f"test {sub.test!r} is not enabled in this project")
        response = parse_payload(sub.test, sub.payload)
        grouped.setdefault((sub.user_id, sub.role_id), {})[
            (sub.alternative_id, crit_id)
        ] = response
    return grouped


def _ordered_keys(
    grouped: Mapping[tuple[str, str], object], config: ProjectConfig
) -> list[tuple[str, str]]:
    user_order = {u.id: i for i, u in enumerate(config.users)}
    role_order = {r.id: i for i, r in enumerate(config.roles)}
    return sorted(grouped, key=lambda k: (role_order[k[1]], user_order[k[0]]))


def _task_metrics(
    grouped: Mapping[tuple[str, str], Mapping[tuple[str, str], object]],
    config: ProjectConfig,
) -> list[TaskMetricRow]:
    definitions = config.ut_definitions()
    if not definitions:
        return []
    ut_crit = next(c.id for c in config.criteria if c.kind == UT)
    user_weights = config.user_weights()
    rows: list[TaskMetricRow] = []
    scopes: list[tuple[str, list[str]]] = [
        (role.id, [uid for (uid, rid) in grouped if rid == role.id])
        for role in config.roles
    ]
    scopes.append(("all", [uid for (uid, _rid) in grouped]))
    for scope, members in scopes:
        if not members:
            continue
        weights = role_user_weights(user_weights, members)
        for alt in config.alternative_ids():
            for definition in definitions:
                per_user: dict[str, UtTaskResponse] = {}
                for (uid, rid), cells in grouped.items():
                    if scope != "all" and rid != scope:
                        continue
                    response = cells.get((alt, ut_crit))
                    if response is None:
                        continue
                    match = next(
                        (t for t in response.tasks if t.task_id == definition.id), None
                    )
                    if match is not None:
                        per_user[uid] = match
                metrics = ut_task_role_metrics(per_user, definition, weights)
                if metrics is None:
                    continue
                eff, succ, sat = metrics
                rows.append(TaskMetricRow(scope, alt, definition.id, eff, succ, sat))
    return rows


def evaluate(
    config: ProjectConfig,
    submissions: Sequence[Submission],
    role_filter: str | None = None,
) -> EvaluationResult:
    """Run the full decision pipeline over a batch of submissions."""
    weights = config.derive_criteria_weights()
    criteria_weights = dict(zip(config.criterion_ids(), weights.normalized))

    if role_filter is not None:
        if role_filter not in config.role_ids():
            raise ValidationError(f"unknown role {role_filter!r}")
        submissions = [s for s in submissions if s.role_id == role_filter]

    grouped = _group_by_user_role(submissions, config)
    warnings: list[str] = []
    users = config.user_by_id()

    id_matrices: list[IndividualDecisionMatrix] = []
    uid_by_key: dict[tuple[str, str], UnifiedDecisionMatrix] = {}
    for key in _ordered_keys(grouped, config):
        uid, rid = key
        matrix = build_id_matrix(
            user_id=uid,
            role_id=rid,
            is_expert=users[uid].is_expert,
            alternatives=config.alternative_ids(),
            criteria=config.criterion_kinds(),
            responses=grouped[key],
            ut_definitions=config.ut_definitions(),
        )
        id_matrices.append(matrix)
        uid_by_key[key] = unify_matrix(matrix, config.criterion_kinds())

    nps_answers: dict[str, list[int]] = {alt: [] for alt in config.alternative_ids()}
    acc_verdicts: dict[str, list[tuple[str, str]]] = {
        alt: [] for alt in config.alternative_ids()
    }
    kind_to_crit = {c.kind: c.id for c in config.criteria}
    for key in _ordered_keys(grouped, config):
        for (alt, crit), response in sorted(grouped[key].items()):
            if crit == kind_to_crit.get(NPS):
                nps_answers[alt].append(response.ltr)
            elif crit == kind_to_crit.get(ACC):
                acc_verdicts[alt].append((key[0], response.label))

    task_metrics = _task_metrics(grouped, config)

    if not grouped:
        warnings.append("no submissions: report limited to configuration data")
        return EvaluationResult(
            project=config,
            criteria_weights=weights,
            id_matrices=[],
            uid_matrices={},
            role_matrices={},
            role_ucd={},
            global_matrix=None,
            global_ucd=None,
            role_rankings={},
            global_ranking=None,
            role_aur={},
            global_aur=None,
            nps_answers=nps_answers,
            acc_verdicts=acc_verdicts,
            task_metrics=[],
            warnings=warnings,
        )

    user_weights = config.user_weights()
    role_matrices: dict[str, UnifiedDecisionMatrix] = {}
    role_ucd: dict[str, UcdVector] = {}
    for role in config.roles:
        participants = [
            uid for (uid, rid) in _ordered_keys(grouped, config) if rid == role.id
        ]
        if not participants:
            if role_filter is None:
                warnings.append(
                    f"role {role.id} had no participants; "
                    "its weight was redistributed"
                )
            continue
        w_role = role_user_weights(user_weights, participants)
        matrices = [uid_by_key[(uid, role.id)] for uid in participants]
        role_matrices[role.id] = aggregate_role(role.id, matrices, w_role, participants)
        role_ucd[role.id] = ucd_vector(role_matrices[role.id], criteria_weights)

    # criteria nobody answered stay absent in every collective cell
    for crit in config.criterion_ids():
        if all(
            m.cell(alt, crit) is None
            for m in role_matrices.values()
            for alt in config.alternative_ids()
        ):
            warnings.append(
                f"criterion {crit} has no responses; it scores as worst (beta 0) "
                "in weighted summaries"
            )

    role_weights_raw = {
        rid: w for rid, w in config.role_weights_raw().items() if rid in role_matrices
    }
    total_role_weight = sum(role_weights_raw.values())
    role_weights = {rid: w / total_role_weight for rid, w in role_weights_raw.items()}

    global_matrix = aggregate_global(role_matrices, role_weights)
    global_ucd = ucd_vector(global_matrix, criteria_weights)

    role_rankings, global_ranking = rank_all(
        role_matrices, global_matrix, criteria_weights
    )

    role_aur = {
        rid: tuple(retranslate_from_s9(v) for v in vec.values)
        for rid, vec in role_ucd.items()
    }
    global_aur = tuple(retranslate_from_s9(v) for v in global_ucd.values)

    return EvaluationResult(
        project=config,
        criteria_weights=weights,
        id_matrices=id_matrices,
        uid_matrices=uid_by_key,
        role_matrices=role_matrices,
        role_ucd=role_ucd,
        global_matrix=global_matrix,
        global_ucd=global_ucd,
        role_rankings=role_rankings,
        global_ranking=global_ranking,
        role_aur=role_aur,
        global_aur=global_aur,
        nps_answers=nps_answers,
        acc_verdicts=acc_verdicts,
        task_metrics=task_metrics,
        warnings=warnings,
    )
