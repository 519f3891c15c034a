"""Pipeline orchestration: grouping, validation, determinism."""
import pytest

from usabdss.casestudy import load_project, load_submissions
from usabdss.errors import ValidationError
from usabdss.linguistic import delta_inverse
from usabdss.pipeline import evaluate, parse_payload
from usabdss.project import Submission


@pytest.fixture(scope="module")
def case():
    return load_project(), load_submissions()


class TestParsePayload:
    def test_sus(self):
        response = parse_payload("SUS", {"items": [3] * 10})
        assert response.items == (3,) * 10

    def test_malformed_sus(self):
        with pytest.raises(ValidationError):
            parse_payload("SUS", {"item": [3] * 10})

    def test_unknown_kind(self):
        with pytest.raises(ValidationError):
            parse_payload("EYETRACK", {})

    def test_ut(self):
        response = parse_payload(
            "UT",
            {"tasks": [{"task": "q1", "time_s": 3, "success": 1, "satisfaction": 2}]},
        )
        assert response.tasks[0].success is True


class TestValidation:
    def test_unregistered_user(self, case):
        config, _ = case
        rogue = [Submission("U99", "R1", "A1", "NPS", {"ltr": 5})]
        with pytest.raises(ValidationError, match="U99"):
            evaluate(config, rogue)

    def test_unknown_role(self, case):
        config, _ = case
        rogue = [Submission("U1", "R9", "A1", "NPS", {"ltr": 5})]
        with pytest.raises(ValidationError, match="R9"):
            evaluate(config, rogue)

    def test_disabled_test(self, case):
        config, _ = case
        slim = load_project()
        slim.criteria = [c for c in slim.criteria if c.kind != "ACC"]
        slim.judgments = [
            j
            for j in slim.judgments
            if "C4" not in (j["left"], j["right"])
        ]
        rogue = [Submission("U1", "R3", "A1", "ACC", {"label": "A"})]
        with pytest.raises(ValidationError, match="ACC"):
            evaluate(slim, rogue)

    def test_unknown_role_filter(self, case):
        config, submissions = case
        with pytest.raises(ValidationError, match="R7"):
            evaluate(config, submissions, role_filter="R7")


class TestDeterminism:
    def test_submission_order_irrelevant(self, case):
        config, submissions = case
        forward = evaluate(config, submissions)
        backward = evaluate(config, list(reversed(submissions)))
        assert forward.global_ranking.ranking == backward.global_ranking.ranking
        for a, b in zip(forward.global_ucd.values, backward.global_ucd.values):
            assert delta_inverse(a) == delta_inverse(b)

    def test_repeated_evaluation_identical(self, case):
        config, submissions = case
        first = evaluate(config, submissions)
        second = evaluate(config, submissions)
        assert [m.cells for m in first.id_matrices] == [
            m.cells for m in second.id_matrices
        ]
        assert first.global_ranking.ranking == second.global_ranking.ranking


class TestScopes:
    def test_uid_matrices_keyed_by_user_role(self, case):
        config, submissions = case
        result = evaluate(config, submissions)
        assert ("U4", "R1") in result.uid_matrices
        assert len(result.uid_matrices) == 15

    def test_role_participation(self, case):
        config, submissions = case
        result = evaluate(config, submissions)
        assert set(result.role_matrices) == {"R1", "R2", "R3"}

    def test_task_metric_scopes(self, case):
        config, submissions = case
        result = evaluate(config, submissions)
        # 4 scopes x 3 alternatives x 28 tasks
        assert len(result.task_metrics) == 4 * 3 * 28
