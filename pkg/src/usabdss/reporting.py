"""The usability report: adjective scores, rankings, NPS segments, UT tables.

The report exists in two renderings from one source document: a structured
(JSON-ready) dict holding raw values at full precision, and a plain-text view
that prints numbers at two decimals.  Both are byte-stable for identical
inputs.  Ranking sections copy the ranking engine's output verbatim; nothing
is recomputed here.
"""
from __future__ import annotations

from dataclasses import dataclass
from io import StringIO
from typing import Sequence

from .linguistic import TwoTuple
from .pipeline import EvaluationResult
from .scoring import nps_segments
from .sus_scale import UnbalancedSusValue

__all__ = ["NpsSummary", "nps_summary", "compose_report", "render_text"]


@dataclass(frozen=True)
class NpsSummary:
    promoters: int
    passives: int
    detractors: int
    nps_value: float

    def to_json(self) -> dict:
        return {
            "promoters": self.promoters,
            "passives": self.passives,
            "detractors": self.detractors,
            "nps": self.nps_value,
        }


def nps_summary(answers: Sequence[int]) -> NpsSummary | None:
    """Segment counts and the net score; None when nobody answered."""
    if not answers:
        return None
    promoters, passives, detractors = nps_segments(answers)
    total = len(answers)
    value = 100.0 * (promoters - detractors) / total
    return NpsSummary(promoters, passives, detractors, value)


def _fmt_two_tuple(t: TwoTuple) -> str:
    return f"(s{t.index},{t.alpha:+.2f})"


def _fmt_adjective(v: UnbalancedSusValue) -> str:
    sign = "-" if v.alpha < 0 else "+"
    return f"{v.label} {sign} {abs(v.alpha):.2f}"


def _matrix_json(matrix, alternatives, criteria) -> dict:
    cells = {}
    for alt in alternatives:
        row = {}
        for crit in criteria:
            cell = matrix.cell(alt, crit)
            row[crit] = cell.to_json() if cell is not None else None
        cells[alt] = row
    return cells


def compose_report(result: EvaluationResult) -> dict:
    """Assemble the structured report document from computed artifacts."""
    config = result.project
    alternatives = config.alternative_ids()
    criteria = config.criterion_ids()
    doc: dict = {
        "project": {
            "name": config.name,
            "alternatives": [
                {"id": a.id, "name": a.name, "url": a.url} for a in config.alternatives
            ],
            "criteria": [
                {"id": c.id, "kind": c.kind, "name": c.name} for c in config.criteria
            ],
            "roles": [
                {"id": r.id, "label": r.label, "category": r.category}
                for r in config.roles
            ],
        },
        "weights": {
            "criteria": dict(zip(criteria, result.criteria_weights.normalized)),
            "criteria_raw": dict(zip(criteria, result.criteria_weights.raw)),
            "ci": result.criteria_weights.consistency_index,
            "consistent": result.criteria_weights.consistent,
            "roles": (
                {
                    rid: w
                    for rid, w in _safe_role_weights(config, result).items()
                }
            ),
            "groups": dict(config.group_weights),
        },
        "insufficient_data": result.insufficient,
        "warnings": list(result.warnings),
    }

    if result.insufficient:
        doc["rankings"] = None
        doc["scores"] = None
    else:
        doc["rankings"] = {
            "global": result.global_ranking.to_json(),
            "roles": {
                rid: ranking.to_json() for rid, ranking in result.role_rankings.items()
            },
        }
        doc["scores"] = {
            "ucd": {
                "global": [v.to_json() for v in result.global_ucd.values],
                "roles": {
                    rid: [v.to_json() for v in vec.values]
                    for rid, vec in result.role_ucd.items()
                },
            },
            "adjectives": {
                "global": [
                    {**v.to_json(), "display": _fmt_adjective(v)}
                    for v in result.global_aur
                ],
                "roles": {
                    rid: [
                        {**v.to_json(), "display": _fmt_adjective(v)} for v in vec
                    ]
                    for rid, vec in result.role_aur.items()
                },
            },
            "usability_adjective": {
                alt: result.global_aur[i].label for i, alt in enumerate(alternatives)
            },
            "collective_matrices": {
                "global": _matrix_json(result.global_matrix, alternatives, criteria),
                "roles": {
                    rid: _matrix_json(m, alternatives, criteria)
                    for rid, m in result.role_matrices.items()
                },
            },
        }

    doc["nps"] = {
        alt: (summary.to_json() if summary else None)
        for alt, summary in (
            (alt, nps_summary(result.nps_answers.get(alt, []))) for alt in alternatives
        )
    }
    doc["accessibility"] = {
        alt: [{"user": uid, "label": label} for uid, label in verdicts]
        for alt, verdicts in result.acc_verdicts.items()
    }
    doc["task_metrics"] = [
        {
            "scope": row.scope,
            "alternative": row.alternative_id,
            "task": row.task_id,
            "efficiency_pct": row.efficiency_pct,
            "success_pct": row.success_pct,
            "satisfaction": row.satisfaction.to_json(),
        }
        for row in result.task_metrics
    ]
    return doc


def _safe_role_weights(config, result: EvaluationResult) -> dict[str, float]:
    raw = config.role_weights_raw()
    active = set(result.role_matrices) or set(raw)
    total = sum(w for rid, w in raw.items() if rid in active)
    return {rid: (w / total if rid in active else 0.0) for rid, w in raw.items()}


def render_text(doc: dict) -> str:
    """Plain-text tables of the structured report (two-decimal display)."""
    out = StringIO()
    w = out.write
    name = doc["project"]["name"]
    w(f"Usability evaluation report: {name}\n")
    w("=" * (30 + len(name)) + "\n\n")

    weights = doc["weights"]
    w("Criteria weights")
    ci = weights["ci"]
    verdict = "consistent" if weights["consistent"] else "INCONSISTENT"
    w(f"  (CI {ci:.2f}, {verdict})\n")
    for crit, value in weights["criteria"].items():
        w(f"  {crit}: {value:.3f}\n")
    w("\n")

    if doc["insufficient_data"]:
        w("INSUFFICIENT DATA: no submissions were recorded; no rankings were\n")
        w("computed. Sections below reflect configuration only.\n\n")
    else:
        w("Rankings (best first, by relative closeness)\n")
        g = doc["rankings"]["global"]
        w(f"  global: {' > '.join(g['order'])}\n")
        rc_by_alt = dict(zip(g["alternatives"], g["rc"]))
        for alt in g["order"]:
            w(f"    {alt}: RC {rc_by_alt[alt]:.3f}\n")
        for rid, section in doc["rankings"]["roles"].items():
            w(f"  {rid}: {' > '.join(section['order'])}\n")
        w("\n")

        w("Adjective usability (global)\n")
        adjectives = doc["scores"]["adjectives"]["global"]
        for alt, adj in zip([a["id"] for a in doc["project"]["alternatives"]], adjectives):
            w(f"  {alt}: {adj['display']}\n")
        w("\n")
        w("Adjective usability (per role)\n")
        for rid, vec in doc["scores"]["adjectives"]["roles"].items():
            cells = ", ".join(
                f"{alt['id']}: {adj['display']}"
                for alt, adj in zip(doc["project"]["alternatives"], vec)
            )
            w(f"  {rid}: {cells}\n")
        w("\n")

    w("Net promoter score\n")
    for alt, summary in doc["nps"].items():
        if summary is None:
            w(f"  {alt}: no answers\n")
        else:
            w(
                f"  {alt}: NPS {summary['nps']:+.1f} "
                f"(promoters {summary['promoters']}, passives {summary['passives']}, "
                f"detractors {summary['detractors']})\n"
            )
    w("\n")

    acc = doc["accessibility"]
    if any(acc.values()):
        w("Accessibility verdicts\n")
        for alt, verdicts in acc.items():
            if verdicts:
                labels = ", ".join(f"{v['user']}:{v['label']}" for v in verdicts)
                w(f"  {alt}: {labels}\n")
        w("\n")

    rows = doc["task_metrics"]
    if rows:
        w("Usability-test task metrics\n")
        current = None
        for row in rows:
            head = (row["scope"], row["alternative"])
            if head != current:
                w(f"  [{row['scope']}] {row['alternative']}\n")
                current = head
            sat = row["satisfaction"]
            w(
                f"    {row['task']}: efficiency {row['efficiency_pct']:.2f}%  "
                f"success {row['success_pct']:.2f}%  "
                f"satisfaction (s{sat['index']},{sat['alpha']:+.2f})\n"
            )
        w("\n")

    if doc["warnings"]:
        w("Data-quality warnings\n")
        for warning in doc["warnings"]:
            w(f"  - {warning}\n")

    return out.getvalue()
