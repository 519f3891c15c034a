"""Evaluation-project domain model, lifecycle and persistence.

A project is configured in ``draft`` (alternatives, criteria, judgments,
users, roles), collects submissions in ``collecting`` once its judgments pass
the consistency gate, and freezes in ``closed``.  Submissions are unique per
(user, role, alternative, test); replaying an exported submission log yields
an identical result bundle.

Persistence is sqlite-backed: a file path gives a durable store, ``:memory:``
an ephemeral one for tests.
"""
from __future__ import annotations

import json
import secrets
import sqlite3
import threading
import time
from dataclasses import dataclass, field
from typing import Mapping

from . import fahp
from .errors import (
    ConfigurationError,
    ConflictError,
    StateError,
    ValidationError,
)
from .scoring import TEST_KINDS, UT, UtTaskDefinition

__all__ = [
    "Alternative",
    "Criterion",
    "User",
    "Role",
    "ProjectConfig",
    "Submission",
    "ProjectStore",
    "DRAFT",
    "COLLECTING",
    "CLOSED",
]

DRAFT = "draft"
COLLECTING = "collecting"
CLOSED = "closed"
_STATES = (DRAFT, COLLECTING, CLOSED)


@dataclass(frozen=True)
class Alternative:
    id: str
    name: str
    url: str = ""
    logo: str | None = None


@dataclass(frozen=True)
class Criterion:
    id: str
    kind: str  # SUS | NPS | UT | ACC
    name: str = ""
    tasks: tuple[UtTaskDefinition, ...] = ()

    def __post_init__(self):
        if self.kind not in TEST_KINDS:
            raise ConfigurationError(f"unknown test kind {self.kind!r}")
        if self.kind == UT and not self.tasks:
            raise ConfigurationError(f"criterion {self.id}: usability test needs tasks")
        if self.kind != UT and self.tasks:
            raise ConfigurationError(f"criterion {self.id}: only usability tests carry tasks")


@dataclass(frozen=True)
class User:
    id: str
    name: str
    group: str  # "expert" | "end_user"

    def __post_init__(self):
        if self.group not in ("expert", "end_user"):
            raise ConfigurationError(f"user {self.id}: unknown group {self.group!r}")

    @property
    def is_expert(self) -> bool:
        return self.group == "expert"


@dataclass(frozen=True)
class Role:
    id: str
    label: str
    weight: float
    category: str = ""

    def __post_init__(self):
        if self.weight <= 0:
            raise ConfigurationError(f"role {self.id}: weight must be positive")


@dataclass
class ProjectConfig:
    name: str
    alternatives: list[Alternative] = field(default_factory=list)
    criteria: list[Criterion] = field(default_factory=list)
    users: list[User] = field(default_factory=list)
    roles: list[Role] = field(default_factory=list)
    group_weights: dict[str, float] = field(
        default_factory=lambda: {"expert": 1.0, "end_user": 1.0}
    )
    judgments: list[dict] = field(default_factory=list)
    judgment_scale: dict[str, fahp.TriangularFuzzyNumber] | None = None

    # ---- lookups ----
    def alternative_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.alternatives)

    def criterion_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.criteria)

    def criterion_kinds(self) -> dict[str, str]:
        return {c.id: c.kind for c in self.criteria}

    def user_by_id(self) -> dict[str, User]:
        return {u.id: u for u in self.users}

    def role_ids(self) -> tuple[str, ...]:
        return tuple(r.id for r in self.roles)

    def user_weights(self) -> dict[str, float]:
        return {u.id: self.group_weights[u.group] for u in self.users}

    def role_weights_raw(self) -> dict[str, float]:
        return {r.id: r.weight for r in self.roles}

    def ut_definitions(self) -> tuple[UtTaskDefinition, ...]:
        for c in self.criteria:
            if c.kind == UT:
                return c.tasks
        return ()

    def derive_criteria_weights(self) -> fahp.CriteriaWeights:
        matrix = fahp.matrix_from_records(
            self.criterion_ids(), self.judgments, self.judgment_scale
        )
        return fahp.derive_weights(matrix)

    def validate_for_collection(self) -> fahp.CriteriaWeights:
        """Checks required before the project may leave draft."""
        if not self.alternatives:
            raise ConfigurationError("project has no alternatives")
        if not self.criteria:
            raise ConfigurationError("project has no enabled criteria")
        if not self.users:
            raise ConfigurationError("project has no registered users")
        if not self.roles:
            raise ConfigurationError("project has no roles")
        if len(self.criteria) > 1 and len(self.judgments) != len(self.criteria) * (
            len(self.criteria) - 1
        ) // 2:
            raise ConfigurationError("pairwise judgments are incomplete")
        weights = self.derive_criteria_weights()
        if not weights.consistent:
            raise ConfigurationError(
                f"judgments inconsistent: CI {weights.consistency_index:.3f} "
                f"exceeds {fahp.CONSISTENCY_THRESHOLD}"
            )
        return weights

    # ---- (de)serialization ----
    def to_json(self) -> dict:
        doc = {
            "name": self.name,
            "alternatives": [vars(a) for a in self.alternatives],
            "criteria": [
                {
                    "id": c.id,
                    "kind": c.kind,
                    "name": c.name,
                    **(
                        {
                            "tasks": [
                                {
                                    "id": t.id,
                                    "description": t.description,
                                    "max_time_s": t.max_time_s,
                                }
                                for t in c.tasks
                            ]
                        }
                        if c.kind == UT
                        else {}
                    ),
                }
                for c in self.criteria
            ],
            "users": [vars(u) for u in self.users],
            "roles": [
                {"id": r.id, "label": r.label, "weight": r.weight, "category": r.category}
                for r in self.roles
            ],
            "group_weights": dict(self.group_weights),
            "judgments": list(self.judgments),
        }
        if self.judgment_scale is not None:
            doc["scale"] = {k: list(v) for k, v in self.judgment_scale.items()}
        return doc

    @classmethod
    def from_json(cls, doc: Mapping) -> "ProjectConfig":
        try:
            criteria = []
            for c in doc.get("criteria", []):
                tasks = tuple(
                    UtTaskDefinition(t["id"], t.get("description", ""), t["max_time_s"])
                    for t in c.get("tasks", [])
                )
                criteria.append(
                    Criterion(c["id"], c["kind"], c.get("name", ""), tasks)
                )
            scale = None
            if "scale" in doc:
                scale = fahp.scale_from_json(doc["scale"])
            return cls(
                name=doc.get("name", "unnamed"),
                alternatives=[
                    Alternative(a["id"], a.get("name", a["id"]), a.get("url", ""), a.get("logo"))
                    for a in doc.get("alternatives", [])
                ],
                criteria=criteria,
                users=[
                    User(u["id"], u.get("name", u["id"]), u["group"])
                    for u in doc.get("users", [])
                ],
                roles=[
                    Role(r["id"], r.get("label", r["id"]), r.get("weight", 1.0), r.get("category", ""))
                    for r in doc.get("roles", [])
                ],
                group_weights=dict(
                    doc.get("group_weights", {"expert": 1.0, "end_user": 1.0})
                ),
                judgments=list(doc.get("judgments", [])),
                judgment_scale=scale,
            )
        except KeyError as exc:
            raise ConfigurationError(f"project config missing field {exc}") from None


@dataclass(frozen=True)
class Submission:
    user_id: str
    role_id: str
    alternative_id: str
    test: str
    payload: dict
    received_at: float = 0.0

    def key(self) -> tuple[str, str, str, str]:
        return (self.user_id, self.role_id, self.alternative_id, self.test)


class ProjectStore:
    """Embedded transactional store for projects and their submissions."""

    def __init__(self, path: str = ":memory:"):
        self._conn = sqlite3.connect(path, check_same_thread=False)
        self._lock = threading.Lock()
        self._conn.execute(
            """CREATE TABLE IF NOT EXISTS projects (
                id TEXT PRIMARY KEY,
                config TEXT NOT NULL,
                state TEXT NOT NULL,
                moderator_token TEXT NOT NULL,
                stale INTEGER NOT NULL DEFAULT 1,
                bundle TEXT
            )"""
        )
        self._conn.execute(
            """CREATE TABLE IF NOT EXISTS participants (
                project_id TEXT NOT NULL,
                user_id TEXT NOT NULL,
                token TEXT NOT NULL,
                current_role TEXT,
                PRIMARY KEY (project_id, user_id)
            )"""
        )
        self._conn.execute(
            """CREATE TABLE IF NOT EXISTS submissions (
                project_id TEXT NOT NULL,
                user_id TEXT NOT NULL,
                role_id TEXT NOT NULL,
                alternative_id TEXT NOT NULL,
                test TEXT NOT NULL,
                payload TEXT NOT NULL,
                received_at REAL NOT NULL,
                PRIMARY KEY (project_id, user_id, role_id, alternative_id, test)
            )"""
        )
        self._conn.commit()

    # ---- projects ----
    def create_project(self, config: ProjectConfig) -> tuple[str, str]:
        project_id = secrets.token_hex(8)
        token = secrets.token_hex(16)
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT INTO projects (id, config, state, moderator_token) VALUES (?,?,?,?)",
                (project_id, json.dumps(config.to_json()), DRAFT, token),
            )
        return project_id, token

    def get_config(self, project_id: str) -> ProjectConfig:
        row = self._conn.execute(
            "SELECT config FROM projects WHERE id=?", (project_id,)
        ).fetchone()
        if row is None:
            raise KeyError(project_id)
        return ProjectConfig.from_json(json.loads(row[0]))

    def update_config(self, project_id: str, config: ProjectConfig):
        state = self.get_state(project_id)
        if state != DRAFT:
            raise StateError(f"configuration is frozen once the project is {state}")
        with self._lock, self._conn:
            self._conn.execute(
                "UPDATE projects SET config=?, stale=1 WHERE id=?",
                (json.dumps(config.to_json()), project_id),
            )

    def get_state(self, project_id: str) -> str:
        row = self._conn.execute(
            "SELECT state FROM projects WHERE id=?", (project_id,)
        ).fetchone()
        if row is None:
            raise KeyError(project_id)
        return row[0]

    def moderator_token(self, project_id: str) -> str:
        row = self._conn.execute(
            "SELECT moderator_token FROM projects WHERE id=?", (project_id,)
        ).fetchone()
        if row is None:
            raise KeyError(project_id)
        return row[0]

    def set_state(self, project_id: str, new_state: str):
        if new_state not in _STATES:
            raise ValidationError(f"unknown state {new_state!r}")
        current = self.get_state(project_id)
        allowed = {DRAFT: {COLLECTING}, COLLECTING: {CLOSED}, CLOSED: set()}
        if new_state not in allowed[current]:
            raise StateError(f"cannot move from {current} to {new_state}")
        if new_state == COLLECTING:
            self.get_config(project_id).validate_for_collection()
        with self._lock, self._conn:
            self._conn.execute(
                "UPDATE projects SET state=? WHERE id=?", (new_state, project_id)
            )

    # ---- participants ----
    def register_participant(self, project_id: str, user_id: str) -> str:
        token = secrets.token_hex(16)
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT OR REPLACE INTO participants (project_id, user_id, token) VALUES (?,?,?)",
                (project_id, user_id, token),
            )
        return token

    def participant_by_token(self, project_id: str, token: str) -> str | None:
        row = self._conn.execute(
            "SELECT user_id FROM participants WHERE project_id=? AND token=?",
            (project_id, token),
        ).fetchone()
        return row[0] if row else None

    def bind_role(self, project_id: str, user_id: str, role_id: str):
        with self._lock, self._conn:
            self._conn.execute(
                "UPDATE participants SET current_role=? WHERE project_id=? AND user_id=?",
                (role_id, project_id, user_id),
            )

    def current_role(self, project_id: str, user_id: str) -> str | None:
        row = self._conn.execute(
            "SELECT current_role FROM participants WHERE project_id=? AND user_id=?",
            (project_id, user_id),
        ).fetchone()
        return row[0] if row else None

    # ---- submissions ----
    def add_submission(self, project_id: str, submission: Submission):
        received = submission.received_at or time.time()
        try:
            with self._lock, self._conn:
                self._conn.execute(
                    "INSERT INTO submissions VALUES (?,?,?,?,?,?,?)",
                    (
                        project_id,
                        submission.user_id,
                        submission.role_id,
                        submission.alternative_id,
                        submission.test,
                        json.dumps(submission.payload, sort_keys=True),
                        received,
                    ),
                )
                self._conn.execute(
                    "UPDATE projects SET stale=1 WHERE id=?", (project_id,)
                )
        except sqlite3.IntegrityError:
            raise ConflictError(
                f"{submission.test} already submitted for "
                f"({submission.user_id}, {submission.role_id}, {submission.alternative_id})"
            ) from None

    def submissions(self, project_id: str) -> list[Submission]:
        rows = self._conn.execute(
            "SELECT user_id, role_id, alternative_id, test, payload, received_at "
            "FROM submissions WHERE project_id=? "
            "ORDER BY received_at, user_id, role_id, alternative_id, test",
            (project_id,),
        ).fetchall()
        return [
            Submission(u, r, a, t, json.loads(p), ts) for u, r, a, t, p, ts in rows
        ]

    # ---- result bundle cache ----
    def cache_bundle(self, project_id: str, bundle: dict):
        with self._lock, self._conn:
            self._conn.execute(
                "UPDATE projects SET bundle=?, stale=0 WHERE id=?",
                (json.dumps(bundle, sort_keys=True), project_id),
            )

    def cached_bundle(self, project_id: str) -> tuple[dict | None, bool]:
        row = self._conn.execute(
            "SELECT bundle, stale FROM projects WHERE id=?", (project_id,)
        ).fetchone()
        if row is None:
            raise KeyError(project_id)
        bundle = json.loads(row[0]) if row[0] else None
        return bundle, bool(row[1])

    def close(self):
        self._conn.close()


def submissions_from_dataset(doc: Mapping) -> list[Submission]:
    """Parse the batch-import dataset format into submissions."""
    out = []
    for i, rec in enumerate(doc.get("responses", [])):
        try:
            out.append(
                Submission(
                    user_id=rec["user"],
                    role_id=rec["role"],
                    alternative_id=rec["alternative"],
                    test=rec["test"],
                    payload=dict(rec["payload"]),
                    received_at=float(rec.get("received_at", i)),
                )
            )
        except KeyError as exc:
            raise ValidationError(f"response record {i} missing field {exc}") from None
    return out
