"""Reproduction harness for the bundled case study.

Recomputes every published table of the bundled evaluation from the raw
fixture responses and diffs the results against the expected values at their
stated tolerances.  Cells where the source tables are internally inconsistent
(transcription artifacts; see NOTES in the repository root) are whitelisted:
they are checked against the derived value instead and reported as documented
deviations rather than failures.

One check is expected to fail and is kept failing on purpose: the stated
global ranking (A2 > A1 > A3) contradicts the published closeness values
(RC(A3) = 0.126 > RC(A1) = 0.108), which order A2 > A3 > A1 under the
descending-closeness rule this engine implements.  See NOTES for the full
analysis.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path

from . import casestudy, fahp
from .linguistic import S9, TwoTuple, delta, delta_inverse, weighted_average
from .pipeline import evaluate
from .project import ProjectConfig, submissions_from_dataset
from .reporting import compose_report
from .sus_scale import retranslate_from_s9, tf_sus, unify_to_s9
from .topsis import ideal_solutions, rank_matrix, weighted_values

__all__ = ["CheckResult", "run_all_checks"]


@dataclass
class CheckResult:
    name: str
    failures: list[str] = field(default_factory=list)
    deviations: list[str] = field(default_factory=list)
    details: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


# ---------------------------------------------------------------------------
# expected values (printed tables of the case study)
# ---------------------------------------------------------------------------

EXPECTED_WC = (0.567, 0.114, 0.292, 0.027)
EXPECTED_EXTENTS = (
    (0.23, 0.50, 1.11),
    (0.09, 0.13, 0.32),
    (0.08, 0.25, 0.49),
    (0.07, 0.11, 0.25),
)
# (row, column) -> V(row >= column)
EXPECTED_POSSIBILITY = {
    (1, 0): 0.20, (2, 0): 0.51, (3, 0): 0.05,
    (1, 2): 0.67, (2, 1): 1.00, (3, 1): 0.89,
    (1, 3): 1.00, (2, 3): 1.00, (3, 2): 0.55,
}

# user -> alternative -> ((index, alpha) per criterion C1..C4; None = absent)
EXPECTED_UID = {
    "U4": {"A1": ((5, -0.2), (3, -0.33), (4, -0.07), (0, 0)),
           "A2": ((3, 0.4), (6, -0.32), (5, 0.43), (4, 0)),
           "A3": ((2, 0.4), (2, -0.32), (1, -0.21), (0, 0))},
    "U6": {"A1": ((2, 0.4), (3, -0.33), (4, 0.14), None),
           "A2": ((5, -0.4), (6, -0.32), (4, 0.43), None),
           "A3": ((2, 0.2), (2, -0.32), (5, -0.29), None)},
    "U12": {"A1": ((3, 0), (5, -0.34), (5, 0), None),
            "A2": ((4, -0.4), (0, 0), (5, -0.14), None),
            "A3": ((3, 0), (4, -0.33), (6, -0.21), None)},
    "U2": {"A1": ((2, 0.4), (2, -0.32), (3, 0.43), (0, 0)),
           "A2": ((4, 0.4), (1, -0.34), (5, -0.07), (4, 0)),
           "A3": ((2, 0.2), (0, 0), (4, -0.29), (0, 0))},
    "U5": {"A1": ((4, 0), (5, -0.34), (6, 0.29), None),
           "A2": ((6, 0.4), (7, -0.33), (5, -0.21), None),
           "A3": ((3, 0.2), (4, -0.33), (5, 0.07), None)},
    "U10": {"A1": ((3, -0.4), (5, -0.34), (6, -0.21), None),
            "A2": ((4, 0), (6, -0.32), (5, -0.36), None),
            "A3": ((4, 0), (6, -0.32), (5, -0.14), None)},
    "U13": {"A1": ((4, -0.2), (4, -0.33), (0, 0), None),
            "A2": ((5, -0.4), (4, -0.33), (0, 0), None),
            "A3": ((5, -0.4), (0, 0), (5, -0.07), None)},
    "U15": {"A1": ((3, 0.4), (4, -0.33), (6, -0.21), None),
            "A2": ((4, -0.2), (7, -0.33), (4, -0.21), None),
            "A3": ((6, -0.4), (7, -0.33), (3, 0.43), None)},
    "U1": {"A1": ((3, 0.4), (6, -0.32), (5, -0.5), (0, 0)),
           "A2": ((4, 0), (5, -0.34), (4, 0.36), (0, 0)),
           "A3": ((5, -0.2), (4, -0.33), (5, 0.43), (0, 0))},
    "U3": {"A1": ((4, 0.2), (5, -0.34), (5, -0.5), (0, 0)),
           "A2": ((5, 0), (7, -0.33), (6, 0.36), (0, 0)),
           "A3": ((6, 0), (7, -0.33), (6, -0.5), (0, 0))},
    "U7": {"A1": ((5, 0), (6, -0.32), (5, 0.07), None),
           "A2": ((4, 0.4), (7, -0.33), (5, 0.14), None),
           "A3": ((4, 0), (6, -0.32), (5, -0.36), None)},
    "U8": {"A1": ((5, -0.2), (5, -0.34), (6, 0.43), None),
           "A2": ((4, -0.2), (6, -0.32), (6, 0.07), None),
           "A3": ((4, 0.4), (6, -0.32), (6, -0.21), None)},
    "U9": {"A1": ((5, 0.2), (4, -0.33), (6, -0.21), None),
           "A2": ((5, 0), (4, -0.33), (5, -0.36), None),
           "A3": ((6, -0.2), (0, 0), (5, -0.14), None)},
    "U11": {"A1": ((2, 0.4), (0, 0), (3, -0.07), None),
            "A2": ((5, -0.2), (1, -0.34), (4, 0.29), None),
            "A3": ((5, -0.4), (6, -0.32), (6, 0.29), None)},
    "U14": {"A1": ((3, 0.2), (5, -0.34), (6, 0.43), None),
            "A2": ((5, 0), (7, -0.33), (6, -0.21), None),
            "A3": ((5, -0.2), (5, -0.34), (7, -0.5), None)},
}

# cells whose printed unified value rounds an intermediate before the level
# transform; the exact chain gives alpha -0.33 (table shows -0.32 / -0.34)
UID_ROUNDING_CELLS = {
    ("U12", "A1"), ("U2", "A1"), ("U5", "A1"), ("U10", "A1"), ("U1", "A1"),
    ("U3", "A1"), ("U7", "A1"), ("U8", "A1"), ("U14", "A1"),
    ("U4", "A2"), ("U6", "A2"), ("U2", "A2"), ("U10", "A2"), ("U1", "A2"),
    ("U8", "A2"), ("U11", "A2"),
    ("U4", "A3"), ("U6", "A3"), ("U10", "A3"), ("U7", "A3"), ("U8", "A3"),
    ("U11", "A3"), ("U14", "A3"),
}

EXPECTED_UCD_R1 = {
    "A1": ((3, 0.45), (3, 0.31), (4, 0.34), (0, 0)),
    "A2": ((4, -0.15), (4, -0.15), (5, -0.08), (4, 0)),
    "A3": ((3, -0.47), (2, 0.32), (4, -0.34), (0, 0)),
}
EXPECTED_UCD1_VECTOR = {"A1": (4, -0.4), "A2": (4, 0.17), "A3": (3, -0.23)}

EXPECTED_GLOBAL = {
    "A1": ((4, -0.45), (4, -0.34), (5, -0.47), (0, 0)),
    "A2": ((4, 0.30), (4, 0.41), (5, -0.36), (3, -0.2)),
    "A3": ((4, -0.35), (3, 0.25), (4, 0.45), (0, 0)),
}
EXPECTED_GLOBAL_VECTOR = {"A1": (4, -0.24), "A2": (4, 0.37), "A3": (4, -0.26)}

EXPECTED_IDEALS_R1 = (2.183, 0.439, 1.438, 0.108)
EXPECTED_NEG_IDEALS_R1 = (1.434, 0.264, 1.067, 0.000)
EXPECTED_IDEALS_GLOBAL = (2.439, 0.503, 1.354, 0.076)
EXPECTED_RC_GLOBAL = {"A1": 0.108, "A2": 1.000, "A3": 0.126}
EXPECTED_D_GLOBAL = {"A1": (0.440, 0.053), "A2": (0.000, 0.454), "A3": (0.401, 0.058)}

EXPECTED_RANKINGS = {
    "R1": ("A2", "A1", "A3"),
    "R2": ("A2", "A3", "A1"),
    "R3": ("A3", "A2", "A1"),
    # stated in the source narrative; contradicts the RC table it accompanies
    "global": ("A2", "A1", "A3"),
}

# scope -> alternative -> (ucd 2-tuple as printed, aur label, aur alpha)
EXPECTED_RETRANSLATION = {
    ("A1", "R1"): ((4, -0.4), "OK", 0.20),
    ("A1", "R2"): ((3, 0.48), "Poor", 0.48),
    ("A1", "R3"): ((4, 0.24), "OK", 0.12),
    ("A1", "global"): ((4, -0.24), "OK", -0.12),
    ("A2", "R1"): ((4, 0.17), "OK", 0.085),
    ("A2", "R2"): ((4, 0.33), "OK", 0.165),
    ("A2", "R3"): ((5, -0.31), "OK", 0.345),
    ("A2", "global"): ((4, 0.37), "OK", 0.185),
    ("A3", "R1"): ((3, -0.23), "Poor", 0.23),
    ("A3", "R2"): ((4, -0.16), "OK", 0.42),
    ("A3", "R3"): ((5, -0.06), "OK", 0.47),
    ("A3", "global"): ((4, -0.26), "OK", -0.13),
}
# entries whose printed alpha cannot come from the nearest-center rule; the
# derived value is asserted instead (sign slips / stale numbers in print)
RETRANSLATION_DEVIATIONS = {
    ("A1", "R1"): ("OK", -0.20),
    ("A3", "R1"): ("Poor", -0.23),
    ("A3", "R2"): ("OK", -0.08),
}

EXPECTED_UT_U4 = {
    "A1": (42.86, 71.43, (2, -0.04)),
    "A2": (39.29, 82.14, (3, -0.29)),
    "A3": (3.57, 42.86, (0, 0.39)),
}


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _load(data_dir: str | None):
    if data_dir is None:
        return (
            casestudy.load_project(),
            casestudy.load_submissions(),
            casestudy.load_judgments(),
            casestudy.load_contradictory_judgments(),
        )
    base = Path(data_dir)
    read = lambda name: json.loads((base / name).read_text(encoding="utf-8"))
    return (
        ProjectConfig.from_json(read("case_project.json")),
        submissions_from_dataset(read("case_responses.json")),
        read("case_judgments.json"),
        read("contradictory_judgments.json"),
    )


def _cell_tol(tolerance: float | None, default: float) -> float | None:
    """None selects print-precision comparison (round to 2 decimals)."""
    if tolerance is None:
        return default
    if tolerance == 0:
        return None
    return tolerance


def _match(derived: TwoTuple, expected: tuple[int, float], tol: float | None) -> bool:
    index, alpha = expected
    if tol is None:  # print precision: exact after rounding to 2 decimals
        return derived.index == index and round(derived.alpha, 2) == round(alpha, 2)
    return abs(delta_inverse(derived) - (index + alpha)) <= tol + 1e-12


def _fmt(derived: TwoTuple) -> str:
    return f"(s{derived.index},{derived.alpha:+.2f})"


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


def check_weights(project, judgments_doc, tolerance=None) -> CheckResult:
    check = CheckResult("criteria-weights")
    matrix = fahp.matrix_from_records(
        judgments_doc["criteria"], judgments_doc["judgments"]
    )
    extents = fahp.fuzzy_synthetic_extents(matrix)
    for j, (expected, extent) in enumerate(zip(EXPECTED_EXTENTS, extents)):
        for name, got, want in zip("lmu", extent, expected):
            if abs(got - want) > 0.01:
                check.failures.append(
                    f"extent C{j+1}.{name}: derived {got:.3f} vs expected {want:.2f}"
                )
    for (row, col), want in EXPECTED_POSSIBILITY.items():
        got = fahp.possibility_degree(extents[row], extents[col])
        if abs(got - want) > 0.01:
            check.failures.append(
                f"possibility V(C{row+1}>=C{col+1}): derived {got:.3f} "
                f"vs expected {want:.2f}"
            )
    weights = fahp.derive_weights(matrix)
    for j, (got, want) in enumerate(zip(weights.normalized, EXPECTED_WC)):
        if abs(got - want) > 0.02:
            check.failures.append(
                f"WC[{j}]: derived {got:.4f} vs expected {want:.3f} (tol 0.02)"
            )
    check.details.append(
        "WC = {"
        + ", ".join(f"{w:.3f}" for w in weights.normalized)
        + f"}}, CI = {weights.consistency_index:.3f}"
    )
    return check


def check_score_transform(tolerance=None) -> CheckResult:
    check = CheckResult("score-transform")
    v = tf_sus(53)
    if v.label != "OK" or abs(v.alpha - 0.12) > 1e-9:
        check.failures.append(f"transform(53): derived ({v.label},{v.alpha}) vs (OK,0.12)")
    else:
        check.details.append("score 53 -> (OK, 0.12)")
    return check


def check_round_trip_law(tolerance=None) -> CheckResult:
    check = CheckResult("round-trip-law")
    worst = 0.0
    for i in range(10001):
        score = 100.0 * i / 10000.0
        beta = delta_inverse(unify_to_s9(tf_sus(score)))
        worst = max(worst, abs(beta - 8.0 * score / 100.0))
    if worst >= 1e-9:
        check.failures.append(f"max |unified - 8x/100| = {worst:.2e} (>= 1e-9)")
    else:
        check.details.append(f"10001 scores, max deviation {worst:.2e}")
    return check


def check_unified_matrix(result, tolerance=None) -> CheckResult:
    check = CheckResult("unified-individual-matrices")
    tol = _cell_tol(tolerance, 0.005)
    exact = 0
    for user, per_alt in EXPECTED_UID.items():
        role = next(rid for (uid, rid) in result.uid_matrices if uid == user)
        matrix = result.uid_matrices[(user, role)]
        for alt, cells in per_alt.items():
            for j, expected in enumerate(cells):
                crit = f"C{j+1}"
                derived = matrix.cell(alt, crit)
                if expected is None:
                    if derived is not None:
                        check.failures.append(
                            f"{user}/{alt}/{crit}: derived {_fmt(derived)} "
                            "but the table leaves the cell empty"
                        )
                    continue
                if derived is None:
                    check.failures.append(f"{user}/{alt}/{crit}: cell missing")
                    continue
                if crit == "C2" and (user, alt) in UID_ROUNDING_CELLS:
                    # printed value rounds the adjective-scale alpha to two
                    # decimals before the level transform; exact chain -0.33
                    if derived.index == expected[0] and abs(derived.alpha + 0.33) <= 1e-9:
                        check.deviations.append(
                            f"{user}/{alt}/C2: table prints (s{expected[0]},"
                            f"{expected[1]:+.2f}); exact chain gives {_fmt(derived)}"
                        )
                    else:
                        check.failures.append(
                            f"{user}/{alt}/C2: derived {_fmt(derived)} matches "
                            f"neither print {expected} nor the exact value -0.33"
                        )
                    continue
                if _match(derived, expected, tol):
                    exact += 1
                else:
                    check.failures.append(
                        f"{user}/{alt}/{crit}: derived {_fmt(derived)} vs "
                        f"expected (s{expected[0]},{expected[1]:+.2f})"
                    )
    check.details.append(
        f"{exact} cells match at print precision, "
        f"{len(check.deviations)} documented rounding deviations"
    )
    return check


def _check_matrix(check, matrix, expected, vector, expected_vector, tol):
    for alt, cells in expected.items():
        for j, want in enumerate(cells):
            crit = f"C{j+1}"
            derived = matrix.cell(alt, crit)
            if derived is None:
                check.failures.append(f"{alt}/{crit}: cell missing")
                continue
            if abs(delta_inverse(derived) - (want[0] + want[1])) > tol:
                check.failures.append(
                    f"{alt}/{crit}: derived {_fmt(derived)} vs "
                    f"expected (s{want[0]},{want[1]:+.2f}) (tol {tol})"
                )
    for alt, want in expected_vector.items():
        derived = vector.value_of(alt)
        if abs(delta_inverse(derived) - (want[0] + want[1])) > tol:
            check.failures.append(
                f"{alt}/summary: derived {_fmt(derived)} vs "
                f"expected (s{want[0]},{want[1]:+.2f}) (tol {tol})"
            )


def check_role_aggregation(result, tolerance=None) -> CheckResult:
    check = CheckResult("role-aggregation")
    tol = tolerance if tolerance else 0.01
    _check_matrix(
        check,
        result.role_matrices["R1"],
        EXPECTED_UCD_R1,
        result.role_ucd["R1"],
        EXPECTED_UCD1_VECTOR,
        tol,
    )
    if check.passed:
        check.details.append("12 collective cells + 3 summary values within tolerance")
    return check


def check_global_aggregation(result, tolerance=None) -> CheckResult:
    check = CheckResult("global-aggregation")
    tol = tolerance if tolerance else 0.01
    _check_matrix(
        check,
        result.global_matrix,
        EXPECTED_GLOBAL,
        result.global_ucd,
        EXPECTED_GLOBAL_VECTOR,
        tol,
    )
    if check.passed:
        check.details.append("12 collective cells + 3 summary values within tolerance")
    return check


def check_topsis(result, tolerance=None) -> CheckResult:
    check = CheckResult("topsis-ranking")
    wc = dict(
        zip(result.project.criterion_ids(), result.criteria_weights.normalized)
    )
    wv1 = weighted_values(result.role_matrices["R1"], wc)
    ideals1 = ideal_solutions(wv1)
    for got, want in zip(ideals1.positive, EXPECTED_IDEALS_R1):
        if abs(got - want) > 0.005:
            check.failures.append(
                f"role-R1 positive ideal: derived {got:.4f} vs expected {want:.3f}"
            )
    for got, want in zip(ideals1.negative, EXPECTED_NEG_IDEALS_R1):
        if abs(got - want) > 0.005:
            check.failures.append(
                f"role-R1 negative ideal: derived {got:.4f} vs expected {want:.3f}"
            )
    wvg = weighted_values(result.global_matrix, wc)
    for got, want in zip(ideal_solutions(wvg).positive, EXPECTED_IDEALS_GLOBAL):
        if abs(got - want) > 0.005:
            check.failures.append(
                f"global positive ideal: derived {got:.4f} vs expected {want:.3f}"
            )
    ranking = result.global_ranking
    for alt, want in EXPECTED_RC_GLOBAL.items():
        got = ranking.rc_of(alt)
        if abs(got - want) > 0.01:
            check.failures.append(
                f"global RC({alt}): derived {got:.4f} vs expected {want:.3f}"
            )
    for alt, (want_plus, want_minus) in EXPECTED_D_GLOBAL.items():
        i = ranking.alternatives.index(alt)
        if abs(ranking.d_plus[i] - want_plus) > 0.005:
            check.failures.append(
                f"global D+({alt}): derived {ranking.d_plus[i]:.4f} vs {want_plus:.3f}"
            )
        if abs(ranking.d_minus[i] - want_minus) > 0.005:
            check.failures.append(
                f"global D-({alt}): derived {ranking.d_minus[i]:.4f} vs {want_minus:.3f}"
            )
    for rid in ("R1", "R2", "R3"):
        got = result.role_rankings[rid].ranking
        want = EXPECTED_RANKINGS[rid]
        if got != want:
            check.failures.append(
                f"{rid} ranking: derived {' > '.join(got)} vs stated {' > '.join(want)}"
            )
    stated = EXPECTED_RANKINGS["global"]
    if ranking.ranking != stated:
        rc = ", ".join(f"{a}={ranking.rc_of(a):.3f}" for a in ranking.alternatives)
        check.failures.append(
            f"global ranking: derived {' > '.join(ranking.ranking)} vs stated "
            f"{' > '.join(stated)} -- the stated order contradicts the published "
            f"closeness values ({rc}); descending closeness cannot produce it. "
            "Kept failing on purpose; see NOTES."
        )
    if not check.failures:
        check.details.append("ideals, closeness and all rankings as expected")
    return check


def check_retranslation(result, tolerance=None) -> CheckResult:
    check = CheckResult("retranslation")
    exact = 0
    for (alt, scope), (ucd_cell, label, alpha) in EXPECTED_RETRANSLATION.items():
        printed = delta(ucd_cell[0] + ucd_cell[1], S9)
        derived = retranslate_from_s9(printed)
        if (alt, scope) in RETRANSLATION_DEVIATIONS:
            want_label, want_alpha = RETRANSLATION_DEVIATIONS[(alt, scope)]
            if derived.label == want_label and abs(derived.alpha - want_alpha) <= 0.005:
                check.deviations.append(
                    f"{alt}/{scope}: table prints ({label},{alpha:+.3f}); "
                    f"rule gives ({derived.label},{derived.alpha:+.3f})"
                )
            else:
                check.failures.append(
                    f"{alt}/{scope}: derived ({derived.label},{derived.alpha:+.3f}) "
                    f"matches neither print nor the documented value"
                )
            continue
        if derived.label == label and abs(derived.alpha - alpha) <= 0.0005:
            exact += 1
        else:
            check.failures.append(
                f"{alt}/{scope}: derived ({derived.label},{derived.alpha:+.3f}) vs "
                f"expected ({label},{alpha:+.3f})"
            )
    adjectives = [v.label for v in result.global_aur]
    if adjectives != ["OK", "OK", "OK"]:
        check.failures.append(f"global adjectives: {adjectives} (expected OK x3)")
    if not check.failures:
        check.details.append(
            f"{exact} of 12 entries exact; "
            f"{len(check.deviations)} documented deviations; all adjectives OK"
        )
    return check


def check_ut_metrics(result, tolerance=None) -> CheckResult:
    check = CheckResult("usability-test-metrics")
    from .scoring import ut_user_metrics, UtTaskResponse

    config = result.project
    definitions = config.ut_definitions()
    # pull U4's raw UT submissions back out of the grouped matrices
    # by rescoring from the fixture responses
    submissions = casestudy.load_submissions()
    for alt, (want_eff, want_succ, want_sat) in EXPECTED_UT_U4.items():
        payload = next(
            s.payload
            for s in submissions
            if s.user_id == "U4" and s.alternative_id == alt and s.test == "UT"
        )
        responses = [
            UtTaskResponse(t["task"], t["time_s"], t["success"], t["satisfaction"])
            for t in payload["tasks"]
        ]
        eff, succ, sat = ut_user_metrics(responses, definitions)
        if abs(eff - want_eff) > 0.01:
            check.failures.append(f"U4/{alt} efficiency: {eff:.2f} vs {want_eff}")
        if abs(succ - want_succ) > 0.01:
            check.failures.append(f"U4/{alt} success: {succ:.2f} vs {want_succ}")
        if abs(delta_inverse(sat) - (want_sat[0] + want_sat[1])) > 0.01:
            check.failures.append(
                f"U4/{alt} satisfaction: {_fmt(sat)} vs (s{want_sat[0]},{want_sat[1]})"
            )
    if not check.failures:
        check.details.append("3 alternatives x (efficiency, success, satisfaction)")
    return check


def check_consistency_gate(contradictory_doc, tolerance=None) -> CheckResult:
    check = CheckResult("consistency-gate")
    scale = fahp.scale_from_json(contradictory_doc["scale"])
    matrix = fahp.matrix_from_records(
        contradictory_doc["criteria"], contradictory_doc["judgments"], scale
    )
    weights = fahp.derive_weights(matrix)
    if weights.consistency_index <= 0.10 or weights.consistent:
        check.failures.append(
            f"contradictory matrix scored CI {weights.consistency_index:.3f}; "
            "expected > 0.10"
        )
    else:
        check.details.append(
            f"contradictory matrix blocked (CI {weights.consistency_index:.2f})"
        )
    neutral = fahp.build_pairwise_matrix(
        4, {(j, k): "Just important" for j in range(4) for k in range(j + 1, 4)}
    )
    ci = fahp.consistency_index(neutral)
    if ci != 0.0:
        check.failures.append(f"neutral matrix CI {ci!r}; expected exactly 0")
    else:
        check.details.append("neutral matrix passes with CI = 0")
    return check


def check_property_suites(tolerance=None) -> CheckResult:
    check = CheckResult("property-suites")
    rng = random.Random(20240601)
    # 2TWA: idempotence, boundedness, monotonicity, weight-scale invariance
    for trial in range(10000):
        n = rng.randint(1, 6)
        betas = [rng.uniform(0, 8) for _ in range(n)]
        weights = [rng.uniform(0.01, 5) for _ in range(n)]
        values = [delta(b, S9) for b in betas]
        avg = delta_inverse(weighted_average(values, weights))
        if not (min(betas) - 1e-9 <= avg <= max(betas) + 1e-9):
            check.failures.append(f"2TWA out of bounds on trial {trial}")
            break
        scaled = delta_inverse(
            weighted_average(values, [w * 7.3 for w in weights])
        )
        if abs(avg - scaled) > 1e-9:
            check.failures.append(f"2TWA not weight-scale invariant on trial {trial}")
            break
        same = delta(betas[0], S9)
        merged = delta_inverse(weighted_average([same] * n, weights))
        if abs(merged - delta_inverse(same)) > 1e-9:
            check.failures.append(f"2TWA not idempotent on trial {trial}")
            break
        bump = min(8.0, betas[0] + rng.uniform(0, 1))
        bumped = [delta(bump, S9)] + values[1:]
        if delta_inverse(weighted_average(bumped, weights)) + 1e-12 < avg:
            check.failures.append(f"2TWA not monotone on trial {trial}")
            break
    else:
        check.details.append("10000 randomized 2TWA instances")

    # 2-tuple round trips
    for trial in range(10000):
        beta = rng.uniform(0, 8)
        if delta_inverse(delta(beta, S9)) != beta:
            check.failures.append(f"round-trip violated for beta {beta!r}")
            break
    else:
        check.details.append("10000 exact conversion round trips")

    # ranking engine against the direct formula on random 3x4 instances
    from .aggregation import UnifiedDecisionMatrix

    wc = {"C1": 0.4, "C2": 0.3, "C3": 0.2, "C4": 0.1}
    for trial in range(300):
        rows = [[rng.uniform(0, 8) for _ in range(4)] for _ in range(3)]
        matrix = UnifiedDecisionMatrix(
            "prop", ("A1", "A2", "A3"), ("C1", "C2", "C3", "C4")
        )
        for alt, row in zip(("A1", "A2", "A3"), rows):
            for crit, beta in zip(("C1", "C2", "C3", "C4"), row):
                matrix.set_cell(alt, crit, delta(beta, S9))
        ranked = rank_matrix(matrix, wc)
        v = [[b * w for b, w in zip(row, (0.4, 0.3, 0.2, 0.1))] for row in rows]
        a_plus = [max(col) for col in zip(*v)]
        a_minus = [min(col) for col in zip(*v)]
        ok = True
        for i, row in enumerate(v):
            d_plus = math.sqrt(sum((x - p) ** 2 for x, p in zip(row, a_plus)))
            d_minus = math.sqrt(sum((x - m) ** 2 for x, m in zip(row, a_minus)))
            expected = 1.0 if d_plus + d_minus == 0 else d_minus / (d_plus + d_minus)
            if abs(ranked.rc[i] - expected) > 1e-12 or not 0 <= ranked.rc[i] <= 1:
                ok = False
        if not ok:
            check.failures.append(f"closeness disagrees with oracle on trial {trial}")
            break
    else:
        check.details.append("300 random instances against the distance oracle")
    return check


def check_replay_determinism(project, submissions, tolerance=None) -> CheckResult:
    check = CheckResult("replay-determinism")
    first = json.dumps(
        compose_report(evaluate(project, submissions)), sort_keys=True
    )
    second = json.dumps(
        compose_report(evaluate(project, list(submissions))), sort_keys=True
    )
    reversed_log = json.dumps(
        compose_report(evaluate(project, list(reversed(submissions)))), sort_keys=True
    )
    if first != second:
        check.failures.append("two identical replays produced different bundles")
    if first != reversed_log:
        check.failures.append("submission order changed the result bundle")
    if check.passed:
        check.details.append("identical bundles across replays and log orderings")
    return check


def run_all_checks(data_dir: str | None = None, tolerance: float | None = None):
    """Run every reproduction check; returns the list of CheckResults."""
    project, submissions, judgments_doc, contradictory_doc = _load(data_dir)
    result = evaluate(project, submissions)
    checks = [
        check_weights(project, judgments_doc, tolerance),
        check_score_transform(tolerance),
        check_round_trip_law(tolerance),
        check_unified_matrix(result, tolerance),
        check_role_aggregation(result, tolerance),
        check_global_aggregation(result, tolerance),
        check_topsis(result, tolerance),
        check_retranslation(result, tolerance),
        check_ut_metrics(result, tolerance),
        check_consistency_gate(contradictory_doc, tolerance),
        check_property_suites(tolerance),
        check_replay_determinism(project, submissions, tolerance),
    ]
    return checks
