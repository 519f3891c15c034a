"""Access to the bundled case-study dataset.

The package ships the full response set of a three-alternative evaluation of
Moodle platforms (15 users, 3 roles, 4 tests): 450 SUS item answers, 45 NPS
answers, 1260 usability-test task rows and 12 accessibility verdicts, plus
the project configuration and the moderator's pairwise judgments.
"""
from __future__ import annotations

import json
from importlib import resources

from .project import ProjectConfig, Submission, submissions_from_dataset

__all__ = [
    "load_project",
    "load_submissions",
    "load_dataset",
    "load_judgments",
    "load_contradictory_judgments",
]


def _read(name: str) -> dict:
    ref = resources.files("usabdss") / "fixtures" / name
    return json.loads(ref.read_text(encoding="utf-8"))


def load_project() -> ProjectConfig:
    return ProjectConfig.from_json(_read("case_project.json"))


def load_dataset() -> dict:
    return _read("case_responses.json")


def load_submissions() -> list[Submission]:
    return submissions_from_dataset(load_dataset())


def load_judgments() -> dict:
    return _read("case_judgments.json")


def load_contradictory_judgments() -> dict:
    return _read("contradictory_judgments.json")
