"""Unification to S9 and weighted aggregation into collective matrices.

Individual matrices mix three scales, so every present cell is first pushed
to S9 (the deepest hierarchy level): adjective-scale cells through their term
components, S5/S3 cells through the exact level transform.  Unified matrices
are then averaged per role with normalized user weights and across roles with
role weights.  Users (or roles) whose cell is absent contribute no weight to
that cell; the remaining weights renormalize.  A cell absent everywhere stays
absent.

The criteria-weighted summary of a matrix row collapses it to a single S9
value per alternative (the "ucd" vector); there, absent cells count as the
worst score (beta 0) with their full criterion weight, and a data-quality
warning is attached by the reporting layer instead of silently penalizing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import DomainError
from .linguistic import S9, TwoTuple, delta, delta_inverse, transform_level
from .scoring import IndividualDecisionMatrix
from .sus_scale import UnbalancedSusValue, unify_to_s9

__all__ = [
    "UnifiedDecisionMatrix",
    "WeightConfiguration",
    "UcdVector",
    "unify_matrix",
    "role_user_weights",
    "aggregate_role",
    "ucd_vector",
    "aggregate_global",
]


@dataclass
class UnifiedDecisionMatrix:
    """Alternatives x criteria grid of optional S9 2-tuples."""

    scope: str  # "user:<uid>/role:<rid>" | "role:<rid>" | "global"
    alternatives: tuple[str, ...]
    criteria: tuple[str, ...]
    cells: dict[tuple[str, str], TwoTuple] = field(default_factory=dict)

    def cell(self, alternative_id: str, criterion_id: str) -> TwoTuple | None:
        return self.cells.get((alternative_id, criterion_id))

    def set_cell(self, alternative_id: str, criterion_id: str, value: TwoTuple):
        if value.term_set != S9:
            raise DomainError("unified matrices hold S9 values only")
        self.cells[(alternative_id, criterion_id)] = value


@dataclass(frozen=True)
class WeightConfiguration:
    """All weight vectors of an evaluation.

    ``user_weights`` carries each user's group weight (WE or WD); role
    weights are kept both raw and normalized; ``criteria_weights`` is the
    normalized FAHP output aligned with the criteria tuple.
    """

    user_weights: Mapping[str, float]
    role_weights_raw: Mapping[str, float]
    criteria_weights: Mapping[str, float]

    @property
    def role_weights(self) -> dict[str, float]:
        total = math.fsum(self.role_weights_raw.values())
        if total <= 0:
            raise DomainError("role weights must not all be zero")
        return {rid: w / total for rid, w in self.role_weights_raw.items()}


@dataclass(frozen=True)
class UcdVector:
    scope: str
    alternatives: tuple[str, ...]
    values: tuple[TwoTuple, ...]

    def value_of(self, alternative_id: str) -> TwoTuple:
        return self.values[self.alternatives.index(alternative_id)]


def unify_matrix(
    id_matrix: IndividualDecisionMatrix, criteria_kinds: Mapping[str, str]
) -> UnifiedDecisionMatrix:
    """Re-express every present cell of an individual matrix on S9."""
    out = UnifiedDecisionMatrix(
        scope=f"user:{id_matrix.user_id}/role:{id_matrix.role_id}",
        alternatives=id_matrix.alternatives,
        criteria=id_matrix.criteria,
    )
    for key, value in id_matrix.cells.items():
        if isinstance(value, UnbalancedSusValue):
            out.cells[key] = unify_to_s9(value)
        elif isinstance(value, TwoTuple):
            out.cells[key] = transform_level(value, S9)
        else:  # pragma: no cover - build_id_matrix only emits the two types
            raise DomainError(f"cell {key} holds a non-linguistic value")
    return out


def role_user_weights(
    user_weights: Mapping[str, float], participants: Sequence[str]
) -> dict[str, float]:
    """Normalized weights of the users who actually played a role.

    Non-participants get weight zero; participants keep their group weight,
    renormalized to sum 1.
    """
    if not participants:
        raise DomainError("role has no participants")
    active = {uid: user_weights[uid] for uid in participants}
    total = math.fsum(active.values())
    if total <= 0:
        raise DomainError("participants carry no weight")
    return {
        uid: (active[uid] / total if uid in active else 0.0)
        for uid in user_weights
    }


def _merge(
    scope: str,
    alternatives: tuple[str, ...],
    criteria: tuple[str, ...],
    matrices: Sequence[UnifiedDecisionMatrix],
    weights: Sequence[float],
) -> UnifiedDecisionMatrix:
    """Cell-wise 2TWA with per-cell renormalization over present cells."""
    out = UnifiedDecisionMatrix(scope=scope, alternatives=alternatives, criteria=criteria)
    for alt in alternatives:
        for crit in criteria:
            num = 0.0
            den = 0.0
            for matrix, w in zip(matrices, weights):
                cell = matrix.cell(alt, crit)
                if cell is None or w <= 0:
                    continue
                num += delta_inverse(cell) * w
                den += w
            if den > 0:
                out.cells[(alt, crit)] = delta(num / den, S9)
    return out


def aggregate_role(
    role_id: str,
    uid_matrices: Sequence[UnifiedDecisionMatrix],
    weights_by_user: Mapping[str, float],
    user_ids: Sequence[str],
) -> UnifiedDecisionMatrix:
    """Collective matrix of one role from its users' unified matrices."""
    if not uid_matrices:
        raise DomainError(f"role {role_id} has no matrices to aggregate")
    alternatives = uid_matrices[0].alternatives
    criteria = uid_matrices[0].criteria
    weights = [weights_by_user.get(uid, 0.0) for uid in user_ids]
    return _merge(f"role:{role_id}", alternatives, criteria, uid_matrices, weights)


def aggregate_global(
    role_matrices: Mapping[str, UnifiedDecisionMatrix],
    role_weights: Mapping[str, float],
) -> UnifiedDecisionMatrix:
    """Cross-role collective matrix; roles missing a cell renormalize away."""
    if not role_matrices:
        raise DomainError("no role matrices to aggregate")
    first = next(iter(role_matrices.values()))
    matrices = list(role_matrices.values())
    weights = [role_weights[rid] for rid in role_matrices]
    return _merge("global", first.alternatives, first.criteria, matrices, weights)


def ucd_vector(
    matrix: UnifiedDecisionMatrix, criteria_weights: Mapping[str, float]
) -> UcdVector:
    """Criteria-weighted collapse of a matrix to one S9 value per alternative.

    Absent cells score beta 0 under their full weight; callers surface the
    data-quality warning separately.
    """
    total = math.fsum(criteria_weights.values())
    if not math.isclose(total, 1.0, abs_tol=1e-9):
        raise DomainError(f"criteria weights must sum to 1, got {total}")
    values = []
    for alt in matrix.alternatives:
        acc = 0.0
        for crit in matrix.criteria:
            cell = matrix.cell(alt, crit)
            beta = delta_inverse(cell) if cell is not None else 0.0
            acc += beta * criteria_weights[crit]
        values.append(delta(acc, S9))
    return UcdVector(matrix.scope, matrix.alternatives, tuple(values))
