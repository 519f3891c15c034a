"""Criteria weights from pairwise linguistic judgments via fuzzy extent analysis.

The moderator compares criteria pairwise with linguistic labels whose
semantics are triangular fuzzy numbers ``(l, m, u)``.  The upper triangle of
the comparison matrix is given; the lower triangle is completed with fuzzy
reciprocals ``(1/u, 1/m, 1/l)``.  Extent analysis turns the matrix into one
synthetic fuzzy extent per criterion, pairwise possibility degrees compare the
extents, and each criterion's raw weight is the minimum possibility that it
dominates every other criterion.  Raw weights are normalized to sum to 1.

A consistency check accompanies the weights: the crisp midpoint matrix is
scored with the classical ratio ``(lambda - m) / (m - 1)`` where ``lambda``
is Saaty's column-sum estimate ``sum_j colsum_j * w_j`` evaluated with the
extent-analysis weight vector.  Because that vector is generally not the
principal eigenvector, the estimate may fall below ``m`` and the index can go
slightly negative for near-consistent matrices; values above 0.10 flag the
judgments as contradictory.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import ConfigurationError, DegenerateJudgmentsError, DomainError

__all__ = [
    "TriangularFuzzyNumber",
    "DEFAULT_JUDGMENT_SCALE",
    "PairwiseMatrix",
    "CriteriaWeights",
    "build_pairwise_matrix",
    "fuzzy_synthetic_extents",
    "possibility_degree",
    "derive_weights",
    "consistency_index",
]

CONSISTENCY_THRESHOLD = 0.10


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    """A fuzzy quantity with support [l, u] and modal value m."""

    l: float
    m: float
    u: float

    def __post_init__(self):
        if not self.l <= self.m <= self.u:
            raise DomainError(f"TFN components not ordered: ({self.l}, {self.m}, {self.u})")

    def reciprocal(self) -> "TriangularFuzzyNumber":
        if self.l <= 0:
            raise DomainError(f"cannot invert TFN with non-positive support: {self}")
        return TriangularFuzzyNumber(1 / self.u, 1 / self.m, 1 / self.l)

    def __iter__(self):
        return iter((self.l, self.m, self.u))

    def __repr__(self):
        return f"({self.l:.4g}, {self.m:.4g}, {self.u:.4g})"


TFN = TriangularFuzzyNumber

# Label semantics for pairwise judgments.  "Just important" is the neutral
# judgment (also the implicit diagonal); projects may override the scale.
DEFAULT_JUDGMENT_SCALE: dict[str, TriangularFuzzyNumber] = {
    "Just important": TFN(1, 1, 1),
    "Equally important": TFN(1, 1, 3),
    "Weak importance": TFN(1, 3, 5),
    "Moderately important": TFN(1, 3, 5),
    "Strongly important": TFN(3, 5, 7),
    "Very strongly important": TFN(5, 7, 9),
    "Absolute": TFN(7, 9, 9),
}


@dataclass(frozen=True)
class PairwiseMatrix:
    """Reciprocal criteria-comparison matrix of TFNs."""

    size: int
    cells: tuple[tuple[TriangularFuzzyNumber, ...], ...]

    def cell(self, j: int, k: int) -> TriangularFuzzyNumber:
        return self.cells[j][k]


@dataclass(frozen=True)
class CriteriaWeights:
    raw: tuple[float, ...]
    normalized: tuple[float, ...]
    consistency_index: float
    consistent: bool

    def to_json(self) -> dict:
        return {
            "raw": list(self.raw),
            "normalized": list(self.normalized),
            "ci": self.consistency_index,
            "consistent": self.consistent,
        }


def build_pairwise_matrix(
    size: int,
    upper_judgments: Mapping[tuple[int, int], str],
    scale: Mapping[str, TriangularFuzzyNumber] | None = None,
) -> PairwiseMatrix:
    """Assemble the full matrix from upper-triangle judgment labels.

    ``upper_judgments`` maps ``(j, k)`` with ``j < k`` to a label of the
    judgment scale; all ``size * (size - 1) / 2`` pairs must be present.
    """
    scale = dict(DEFAULT_JUDGMENT_SCALE if scale is None else scale)
    if size < 1:
        raise ConfigurationError("pairwise matrix needs at least one criterion")
    expected = {(j, k) for j in range(size) for k in range(j + 1, size)}
    given = set(upper_judgments)
    if given != expected:
        missing = sorted(expected - given)
        extra = sorted(given - expected)
        parts = []
        if missing:
            parts.append(f"missing pairs {missing}")
        if extra:
            parts.append(f"unexpected pairs {extra}")
        raise ConfigurationError("incomplete judgments: " + "; ".join(parts))

    cells: list[list[TriangularFuzzyNumber | None]] = [
        [None] * size for _ in range(size)
    ]
    for j in range(size):
        cells[j][j] = TFN(1, 1, 1)
    for (j, k), label in upper_judgments.items():
        try:
            tfn = scale[label]
        except KeyError:
            known = ", ".join(sorted(scale))
            raise ConfigurationError(
                f"unknown judgment label {label!r} (scale has: {known})"
            ) from None
        if tfn.l <= 0:
            raise DomainError(f"judgment {label!r} has non-positive component")
        cells[j][k] = tfn
        cells[k][j] = tfn.reciprocal()
    return PairwiseMatrix(size, tuple(tuple(row) for row in cells))  # type: ignore[arg-type]


def fuzzy_synthetic_extents(matrix: PairwiseMatrix) -> list[TriangularFuzzyNumber]:
    """One synthetic fuzzy extent per criterion.

    Row sums are divided by the global sum; inverting the global TFN swaps
    its ends (the total's u lands in the l slot).
    """
    rows = []
    for row in matrix.cells:
        rows.append(
            TFN(
                math.fsum(c.l for c in row),
                math.fsum(c.m for c in row),
                math.fsum(c.u for c in row),
            )
        )
    total_l = math.fsum(r.l for r in rows)
    total_m = math.fsum(r.m for r in rows)
    total_u = math.fsum(r.u for r in rows)
    inv = (1 / total_u, 1 / total_m, 1 / total_l)
    return [TFN(r.l * inv[0], r.m * inv[1], r.u * inv[2]) for r in rows]


def possibility_degree(a: TriangularFuzzyNumber, b: TriangularFuzzyNumber) -> float:
    """Degree of possibility that ``a >= b``, in [0, 1].

    1 when ``m_a >= m_b``; 0 when the supports cannot overlap on the right;
    otherwise the height of the intersection of the two membership ramps,
    ``(l_b - u_a) / ((m_a - u_a) - (m_b - l_b))``.
    """
    if a.m >= b.m:
        return 1.0
    if b.l >= a.u:
        return 0.0
    return (b.l - a.u) / ((a.m - a.u) - (b.m - b.l))


def derive_weights(matrix: PairwiseMatrix) -> CriteriaWeights:
    """Raw and normalized criteria weights plus the consistency verdict."""
    m = matrix.size
    if m == 1:
        return CriteriaWeights((1.0,), (1.0,), 0.0, True)
    extents = fuzzy_synthetic_extents(matrix)
    raw = tuple(
        min(possibility_degree(extents[j], extents[k]) for k in range(m) if k != j)
        for j in range(m)
    )
    total = math.fsum(raw)
    if total <= 0:
        raise DegenerateJudgmentsError(
            "every criterion is fully dominated by another; "
            "revise the pairwise judgments"
        )
    normalized = tuple(w / total for w in raw)
    ci = consistency_index(matrix, normalized)
    return CriteriaWeights(raw, normalized, ci, ci <= CONSISTENCY_THRESHOLD)


def consistency_index(
    matrix: PairwiseMatrix, weights: Sequence[float] | None = None
) -> float:
    """Consistency score of the crisp midpoint matrix.

    ``(lambda - m) / (m - 1)`` with ``lambda = sum_j colsum_j * w_j``; the
    weight vector defaults to the extent-analysis weights.  Matrices of size
    1 or 2 are consistent by construction and score 0.
    """
    m = matrix.size
    if m <= 2:
        return 0.0
    if weights is None:
        extents = fuzzy_synthetic_extents(matrix)
        raw = [
            min(possibility_degree(extents[j], extents[k]) for k in range(m) if k != j)
            for j in range(m)
        ]
        total = math.fsum(raw)
        if total <= 0:
            raise DegenerateJudgmentsError(
                "cannot score consistency: all raw weights are zero"
            )
        weights = [w / total for w in raw]
    mid = np.array([[cell.m for cell in row] for row in matrix.cells], dtype=float)
    lam = float(mid.sum(axis=0) @ np.asarray(weights, dtype=float))
    return (lam - m) / (m - 1)


def matrix_from_records(
    criteria_ids: Sequence[str],
    records: Sequence[Mapping[str, str]],
    scale: Mapping[str, TriangularFuzzyNumber] | None = None,
) -> PairwiseMatrix:
    """Build a matrix from ``{left, right, label}`` judgment records."""
    index = {cid: i for i, cid in enumerate(criteria_ids)}
    upper: dict[tuple[int, int], str] = {}
    for rec in records:
        try:
            a, b = index[rec["left"]], index[rec["right"]]
        except KeyError as exc:
            raise ConfigurationError(f"judgment names unknown criterion {exc}") from None
        if a == b:
            raise ConfigurationError(f"self-comparison for {rec['left']!r}")
        if a > b:  # store against the upper triangle
            a, b = b, a
            label = rec["label"]
            tfn = dict(DEFAULT_JUDGMENT_SCALE if scale is None else scale).get(label)
            if tfn is None:
                raise ConfigurationError(f"unknown judgment label {label!r}")
            # a judgment given right-over-left contributes its reciprocal;
            # expressing that needs a TFN, not a label, so reject instead
            raise ConfigurationError(
                "judgments must compare criteria in declaration order "
                f"({rec['left']} comes after {rec['right']})"
            )
        key = (a, b)
        if key in upper:
            raise ConfigurationError(
                f"duplicate judgment for ({rec['left']}, {rec['right']})"
            )
        upper[key] = rec["label"]
    return build_pairwise_matrix(len(criteria_ids), upper, scale)


def scale_from_json(doc: Mapping[str, Sequence[float]]) -> dict[str, TriangularFuzzyNumber]:
    """Parse a scale override of the form ``{label: [l, m, u]}``."""
    out = {}
    for label, lmu in doc.items():
        if len(lmu) != 3:
            raise ConfigurationError(f"scale entry {label!r} must have 3 components")
        out[label] = TFN(*map(float, lmu))
    return out
