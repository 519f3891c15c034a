"""Ranking by relative closeness to ideal solutions.

Each unified collective matrix becomes a crisp value matrix
``v_ij = beta_ij * WC_j`` (criteria weights applied multiplicatively before
any distance is taken; absent cells score beta 0).  All criteria are
benefit-type, so the positive ideal is the column-wise maximum and the
negative ideal the column-wise minimum.  Alternatives are ordered by
descending relative closeness ``RC = D- / (D+ + D-)`` with Euclidean
separation measures; ties keep declaration order.  When every alternative is
identical (both distances zero) all RC values are 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .aggregation import UnifiedDecisionMatrix
from .errors import DomainError
from .linguistic import delta_inverse

__all__ = [
    "WeightedValueMatrix",
    "IdealSolutions",
    "ClosenessResult",
    "weighted_values",
    "ideal_solutions",
    "separations_and_closeness",
    "rank_all",
]


@dataclass(frozen=True)
class WeightedValueMatrix:
    scope: str
    alternatives: tuple[str, ...]
    criteria: tuple[str, ...]
    values: np.ndarray  # shape (n alternatives, m criteria)


@dataclass(frozen=True)
class IdealSolutions:
    positive: np.ndarray
    negative: np.ndarray


@dataclass(frozen=True)
class ClosenessResult:
    scope: str
    alternatives: tuple[str, ...]
    d_plus: np.ndarray
    d_minus: np.ndarray
    rc: np.ndarray
    ranking: tuple[str, ...]  # best first

    def to_json(self) -> dict:
        # rc/d_plus/d_minus stay aligned with the declared alternatives
        return {
            "scope": self.scope,
            "alternatives": list(self.alternatives),
            "order": list(self.ranking),
            "rc": [float(x) for x in self.rc],
            "d_plus": [float(x) for x in self.d_plus],
            "d_minus": [float(x) for x in self.d_minus],
        }

    def rc_of(self, alternative_id: str) -> float:
        return float(self.rc[self.alternatives.index(alternative_id)])


def weighted_values(
    matrix: UnifiedDecisionMatrix, criteria_weights: Mapping[str, float]
) -> WeightedValueMatrix:
    """Crisp ``beta * weight`` matrix; absent cells contribute beta 0."""
    rows = []
    for alt in matrix.alternatives:
        row = []
        for crit in matrix.criteria:
            cell = matrix.cell(alt, crit)
            beta = delta_inverse(cell) if cell is not None else 0.0
            row.append(beta * criteria_weights[crit])
        rows.append(row)
    return WeightedValueMatrix(
        matrix.scope, matrix.alternatives, matrix.criteria, np.array(rows, dtype=float)
    )


def ideal_solutions(matrix: WeightedValueMatrix) -> IdealSolutions:
    """Column-wise extremes; every criterion is benefit-type."""
    if matrix.values.shape[0] < 1:
        raise DomainError("need at least one alternative")
    return IdealSolutions(matrix.values.max(axis=0), matrix.values.min(axis=0))


def separations_and_closeness(
    matrix: WeightedValueMatrix, ideals: IdealSolutions
) -> ClosenessResult:
    """Euclidean separations, relative closeness, and the derived ranking."""
    v = matrix.values
    d_plus = np.sqrt(((v - ideals.positive) ** 2).sum(axis=1))
    d_minus = np.sqrt(((v - ideals.negative) ** 2).sum(axis=1))
    total = d_plus + d_minus
    rc = np.where(total == 0, 1.0, d_minus / np.where(total == 0, 1.0, total))
    order = sorted(range(len(matrix.alternatives)), key=lambda i: (-rc[i], i))
    ranking = tuple(matrix.alternatives[i] for i in order)
    return ClosenessResult(matrix.scope, matrix.alternatives, d_plus, d_minus, rc, ranking)


def rank_matrix(
    matrix: UnifiedDecisionMatrix, criteria_weights: Mapping[str, float]
) -> ClosenessResult:
    wv = weighted_values(matrix, criteria_weights)
    return separations_and_closeness(wv, ideal_solutions(wv))


def rank_all(
    role_matrices: Mapping[str, UnifiedDecisionMatrix],
    global_matrix: UnifiedDecisionMatrix,
    criteria_weights: Mapping[str, float],
) -> tuple[dict[str, ClosenessResult], ClosenessResult]:
    """One ranking per role plus the global one."""
    per_role = {
        rid: rank_matrix(matrix, criteria_weights)
        for rid, matrix in role_matrices.items()
    }
    return per_role, rank_matrix(global_matrix, criteria_weights)
