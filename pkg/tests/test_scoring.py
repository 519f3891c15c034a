"""Response scoring: SUS, NPS regression, UT metrics, ID-matrix assembly."""
import pytest
from hypothesis import given, strategies as st

from usabdss.errors import AuthorizationError, ValidationError
from usabdss.linguistic import S3, S5, TwoTuple, delta_inverse
from usabdss.scoring import (
    AccResponse,
    NpsResponse,
    SusResponse,
    UtResponse,
    UtTaskDefinition,
    UtTaskResponse,
    build_id_matrix,
    nps_segments,
    nps_to_sus,
    sus_score,
    ut_task_role_metrics,
    ut_user_metrics,
)
from usabdss.sus_scale import UnbalancedSusValue


class TestSusScore:
    def test_worked_case_row(self):
        assert sus_score(SusResponse((2, 3, 4, 2, 3, 2, 2, 2, 3, 1))) == 60

    def test_maximum(self):
        assert sus_score(SusResponse((5, 1, 5, 1, 5, 1, 5, 1, 5, 1))) == 100

    def test_neutral(self):
        assert sus_score(SusResponse((3,) * 10)) == 50

    def test_minimum(self):
        assert sus_score(SusResponse((1, 5, 1, 5, 1, 5, 1, 5, 1, 5))) == 0

    def test_item_count_enforced(self):
        with pytest.raises(ValidationError):
            SusResponse((3,) * 9)

    def test_item_range_enforced(self):
        with pytest.raises(ValidationError):
            SusResponse((0, 3, 3, 3, 3, 3, 3, 3, 3, 6))

    @given(st.tuples(*[st.integers(min_value=1, max_value=5) for _ in range(10)]))
    def test_range_and_monotonicity(self, items):
        score = sus_score(SusResponse(items))
        assert 0 <= score <= 100
        # raising an odd item raises the score; raising an even item lowers it
        bumped = list(items)
        if bumped[0] < 5:
            bumped[0] += 1
            assert sus_score(SusResponse(tuple(bumped))) > score
        bumped = list(items)
        if bumped[1] < 5:
            bumped[1] += 1
            assert sus_score(SusResponse(tuple(bumped))) < score


class TestNpsToSus:
    def test_worked_value(self):
        assert nps_to_sus(NpsResponse(4)) == pytest.approx(33.375)

    def test_clamps_low(self):
        assert nps_to_sus(NpsResponse(1)) == 0.0

    def test_clamps_high(self):
        assert nps_to_sus(NpsResponse(10)) == 100.0

    def test_ltr_range(self):
        with pytest.raises(ValidationError):
            NpsResponse(11)
        with pytest.raises(ValidationError):
            NpsResponse(-1)

    @given(st.integers(min_value=0, max_value=9))
    def test_monotone(self, ltr):
        assert nps_to_sus(NpsResponse(ltr)) <= nps_to_sus(NpsResponse(ltr + 1))

    def test_segments(self):
        answers = [7, 7, 1, 2, 8, 7, 5, 8, 6, 8, 8, 7, 5, 2, 8]
        assert nps_segments(answers) == (0, 9, 6)


def _definitions(count=4, max_time=30.0):
    return [UtTaskDefinition(f"q{v}", f"task {v}", max_time) for v in range(1, count + 1)]


def _response(task_id, time_s=10.0, success=True, satisfaction=3):
    return UtTaskResponse(task_id, time_s, success, satisfaction)


class TestUtUserMetrics:
    def test_all_good(self):
        defs = _definitions()
        responses = [_response(d.id, satisfaction=4) for d in defs]
        eff, succ, sat = ut_user_metrics(responses, defs)
        assert (eff, succ) == (100.0, 100.0)
        assert sat == TwoTuple(4, 0.0, S5)

    def test_equality_counts_as_on_time(self):
        defs = _definitions(count=1, max_time=30)
        eff, _, _ = ut_user_metrics([_response("q1", time_s=30.0)], defs)
        assert eff == 100.0

    def test_over_time(self):
        defs = _definitions(count=2, max_time=30)
        responses = [_response("q1", time_s=30.5), _response("q2", time_s=5)]
        eff, _, _ = ut_user_metrics(responses, defs)
        assert eff == 50.0

    def test_missing_task_named(self):
        defs = _definitions()
        responses = [_response("q1"), _response("q2"), _response("q3")]
        with pytest.raises(ValidationError, match="q4"):
            ut_user_metrics(responses, defs)

    def test_duplicate_task_named(self):
        defs = _definitions(count=2)
        responses = [_response("q1"), _response("q1"), _response("q2")]
        with pytest.raises(ValidationError, match="duplicate.*q1"):
            ut_user_metrics(responses, defs)

    def test_satisfaction_is_plain_mean(self):
        defs = _definitions()
        responses = [
            _response("q1", satisfaction=0),
            _response("q2", satisfaction=1),
            _response("q3", satisfaction=3),
            _response("q4", satisfaction=4),
        ]
        _, _, sat = ut_user_metrics(responses, defs)
        assert delta_inverse(sat) == pytest.approx(2.0)


class TestUtTaskRoleMetrics:
    def test_single_respondent_passthrough(self):
        definition = UtTaskDefinition("q1", "", 30)
        metrics = ut_task_role_metrics(
            {"U1": _response("q1", time_s=10, satisfaction=2)}, definition, {"U1": 0.9}
        )
        eff, succ, sat = metrics
        assert (eff, succ) == (100.0, 100.0)
        assert sat == TwoTuple(2, 0.0, S5)

    def test_half_efficient(self):
        definition = UtTaskDefinition("q1", "", 30)
        metrics = ut_task_role_metrics(
            {
                "U1": _response("q1", time_s=10),
                "U2": _response("q1", time_s=31),
            },
            definition,
            {"U1": 1.0, "U2": 1.0},
        )
        assert metrics[0] == 50.0

    def test_weighted_satisfaction(self):
        # hand evaluation: 3*0.357 + 4*0.321 + 3*0.321 = 3.321 -> (s3, 0.32)
        definition = UtTaskDefinition("q1", "", 30)
        metrics = ut_task_role_metrics(
            {
                "U4": _response("q1", satisfaction=3),
                "U6": _response("q1", satisfaction=4),
                "U12": _response("q1", satisfaction=3),
            },
            definition,
            {"U4": 0.357, "U6": 0.321, "U12": 0.321},
        )
        sat = metrics[2]
        assert sat.index == 3
        assert sat.alpha == pytest.approx(0.321, abs=0.001)

    def test_no_respondents_is_absent(self):
        assert ut_task_role_metrics({}, UtTaskDefinition("q1", "", 30), {}) is None


class TestBuildIdMatrix:
    CRITERIA = {"C1": "SUS", "C2": "NPS", "C3": "UT", "C4": "ACC"}

    def test_full_row_matches_first_user(self):
        defs = _definitions(count=2, max_time=30)
        responses = {
            ("A1", "C1"): SusResponse((2, 3, 4, 2, 3, 2, 2, 2, 3, 1)),
            ("A1", "C2"): NpsResponse(4),
            ("A1", "C3"): UtResponse(
                (_response("q1", satisfaction=2), _response("q2", satisfaction=2))
            ),
            ("A1", "C4"): AccResponse("A"),
        }
        m = build_id_matrix(
            "U4", "R1", True, ("A1",), self.CRITERIA, responses, defs
        )
        c1 = m.cell("A1", "C1")
        assert isinstance(c1, UnbalancedSusValue)
        assert (c1.label, c1.level) == ("OK", 2)
        assert c1.alpha == pytest.approx(0.4)
        c2 = m.cell("A1", "C2")
        assert (c2.label, c2.level) == ("Poor", 3)
        assert c2.alpha == pytest.approx(-0.33)
        assert m.cell("A1", "C3") == TwoTuple(2, 0.0, S5)
        assert m.cell("A1", "C4") == TwoTuple(0, 0.0, S3)

    def test_absent_cells_stay_absent(self):
        m = build_id_matrix("U5", "R2", False, ("A1",), self.CRITERIA, {})
        assert m.cell("A1", "C4") is None
        assert m.is_empty()

    def test_expert_only_acc(self):
        with pytest.raises(AuthorizationError):
            build_id_matrix(
                "U5",
                "R2",
                False,
                ("A1",),
                self.CRITERIA,
                {("A1", "C4"): AccResponse("AA")},
            )

    def test_acc_label_to_s3(self):
        m = build_id_matrix(
            "U2", "R2", True, ("A2",), self.CRITERIA, {("A2", "C4"): AccResponse("AA")}
        )
        assert m.cell("A2", "C4") == TwoTuple(1, 0.0, S3)

    def test_unknown_alternative_rejected(self):
        with pytest.raises(ValidationError):
            build_id_matrix(
                "U1",
                "R1",
                True,
                ("A1",),
                self.CRITERIA,
                {("A9", "C1"): SusResponse((3,) * 10)},
            )

    def test_cell_scales_match_criteria(self):
        # structural check over a mixed matrix
        defs = _definitions(count=1)
        responses = {
            ("A1", "C1"): SusResponse((4, 2, 4, 2, 4, 2, 4, 2, 4, 2)),
            ("A1", "C3"): UtResponse((_response("q1", satisfaction=1),)),
        }
        m = build_id_matrix("U1", "R1", True, ("A1",), self.CRITERIA, responses, defs)
        assert isinstance(m.cell("A1", "C1"), UnbalancedSusValue)
        assert m.cell("A1", "C3").term_set == S5

    def test_invalid_acc_label(self):
        with pytest.raises(ValidationError):
            AccResponse("AAAA")
