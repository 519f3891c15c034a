"""HTTP API over the evaluation workflow.

Token model: creating a project returns a moderator bearer token; registering
users returns one invitation token per participant.  Moderator endpoints
configure the project and drive its lifecycle; participant endpoints serve
the session dashboard and accept submissions.  Result bundles are cached per
project and marked stale as soon as a new submission lands.
"""
from __future__ import annotations

import random
from fastapi import Depends, FastAPI, Header, HTTPException, Query, Request
from fastapi.responses import PlainTextResponse

from . import fahp
from .errors import (
    AuthorizationError,
    ConfigurationError,
    ConflictError,
    DomainError,
    StateError,
    ValidationError,
)
from .pipeline import evaluate, parse_payload
from .project import (
    COLLECTING,
    DRAFT,
    Alternative,
    ProjectConfig,
    ProjectStore,
    Role,
    Submission,
    User,
    submissions_from_dataset,
)
from .reporting import compose_report, render_text
from .scoring import ACC, UT

__all__ = ["create_app"]


def create_app(store: ProjectStore | None = None, rng: random.Random | None = None) -> FastAPI:
    store = store if store is not None else ProjectStore(":memory:")
    rng = rng if rng is not None else random.Random()
    app = FastAPI(title="usability A/B evaluation service")

    # ---- error mapping ----
    @app.exception_handler(ValidationError)
    async def _validation(request: Request, exc: ValidationError):
        return _error(422, exc)

    @app.exception_handler(ConfigurationError)
    async def _configuration(request: Request, exc: ConfigurationError):
        return _error(422, exc)

    @app.exception_handler(DomainError)
    async def _domain(request: Request, exc: DomainError):
        return _error(422, exc)

    @app.exception_handler(AuthorizationError)
    async def _authorization(request: Request, exc: AuthorizationError):
        return _error(403, exc)

    @app.exception_handler(ConflictError)
    async def _conflict(request: Request, exc: ConflictError):
        return _error(409, exc)

    @app.exception_handler(StateError)
    async def _state(request: Request, exc: StateError):
        return _error(409, exc)

    def _error(status: int, exc: Exception):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=status, content={"error": str(exc)})

    # ---- auth helpers ----
    def _token(authorization: str | None) -> str:
        if not authorization or not authorization.startswith("Bearer "):
            raise HTTPException(401, "missing bearer token")
        return authorization.removeprefix("Bearer ")

    def moderator(project_id: str, authorization: str | None = Header(None)) -> str:
        token = _token(authorization)
        try:
            expected = store.moderator_token(project_id)
        except KeyError:
            raise HTTPException(404, "unknown project") from None
        if token != expected:
            raise HTTPException(403, "moderator token required")
        return project_id

    def participant(project_id: str, authorization: str | None = Header(None)) -> str:
        token = _token(authorization)
        try:
            store.get_state(project_id)
        except KeyError:
            raise HTTPException(404, "unknown project") from None
        user_id = store.participant_by_token(project_id, token)
        if user_id is None:
            raise HTTPException(403, "invitation token required")
        return user_id

    def _config(project_id: str) -> ProjectConfig:
        try:
            return store.get_config(project_id)
        except KeyError:
            raise HTTPException(404, "unknown project") from None

    def _config_payload(project_id: str) -> dict:
        config = _config(project_id)
        doc = {"id": project_id, "state": store.get_state(project_id),
               "config": config.to_json()}
        if config.judgments and config.criteria:
            try:
                doc["weights"] = config.derive_criteria_weights().to_json()
            except (ConfigurationError, DomainError):
                doc["weights"] = None
        return doc

    # ---- project configuration ----
    @app.post("/projects", status_code=201)
    def create_project(body: dict):
        config = ProjectConfig.from_json(body)
        project_id, token = store.create_project(config)
        return {"id": project_id, "moderator_token": token, "state": DRAFT}

    @app.get("/projects/{project_id}")
    def get_project(project_id: str = Depends(moderator)):
        return _config_payload(project_id)

    @app.patch("/projects/{project_id}")
    def patch_project(body: dict, project_id: str = Depends(moderator)):
        config = _config(project_id)
        merged = config.to_json()
        merged.update(body)
        store.update_config(project_id, ProjectConfig.from_json(merged))
        return _config_payload(project_id)

    @app.post("/projects/{project_id}/alternatives")
    def add_alternative(body: dict, project_id: str = Depends(moderator)):
        config = _config(project_id)
        alternative = Alternative(
            body["id"], body.get("name", body["id"]), body.get("url", ""), body.get("logo")
        )
        if alternative.id in config.alternative_ids():
            raise ConflictError(f"alternative {alternative.id} already exists")
        config.alternatives.append(alternative)
        store.update_config(project_id, config)
        return _config_payload(project_id)

    @app.put("/projects/{project_id}/criteria")
    def put_criteria(body: dict, project_id: str = Depends(moderator)):
        config = _config(project_id)
        doc = {"criteria": body.get("criteria", [])}
        config.criteria = ProjectConfig.from_json(doc).criteria
        store.update_config(project_id, config)
        return _config_payload(project_id)

    @app.put("/projects/{project_id}/judgments")
    def put_judgments(body: dict, project_id: str = Depends(moderator)):
        config = _config(project_id)
        config.judgments = list(body.get("judgments", []))
        if "scale" in body:
            config.judgment_scale = fahp.scale_from_json(body["scale"])
        weights = config.derive_criteria_weights()  # validates labels early
        store.update_config(project_id, config)
        return {"weights": weights.to_json()}

    @app.put("/projects/{project_id}/roles")
    def put_roles(body: dict, project_id: str = Depends(moderator)):
        config = _config(project_id)
        config.roles = [
            Role(r["id"], r.get("label", r["id"]), r.get("weight", 1.0), r.get("category", ""))
            for r in body.get("roles", [])
        ]
        store.update_config(project_id, config)
        return _config_payload(project_id)

    @app.post("/projects/{project_id}/users")
    def post_users(body: dict, project_id: str = Depends(moderator)):
        config = _config(project_id)
        existing = {u.id for u in config.users}
        tokens = {}
        for record in body.get("users", []):
            user = User(record["id"], record.get("name", record["id"]), record["group"])
            if user.id not in existing:
                config.users.append(user)
            tokens[user.id] = store.register_participant(project_id, user.id)
        if "group_weights" in body:
            config.group_weights.update(body["group_weights"])
        store.update_config(project_id, config)
        return {"tokens": tokens}

    @app.post("/projects/{project_id}/state")
    def post_state(body: dict, project_id: str = Depends(moderator)):
        target = body.get("state")
        try:
            store.set_state(project_id, target)
        except ConfigurationError as exc:
            # surface the gate value so the UI can show it
            raise StateError(str(exc)) from None
        return {"state": store.get_state(project_id)}

    # ---- participant session ----
    def _completion(config: ProjectConfig, project_id: str, user_id: str, role_id: str):
        done = {
            (s.alternative_id, s.test)
            for s in store.submissions(project_id)
            if s.user_id == user_id and s.role_id == role_id
        }
        user = config.user_by_id()[user_id]
        matrix = {}
        for alt in config.alternative_ids():
            row = {}
            for criterion in config.criteria:
                if criterion.kind == ACC and not user.is_expert:
                    continue
                row[criterion.kind] = (alt, criterion.kind) in done
            matrix[alt] = row
        return matrix

    @app.get("/projects/{project_id}/session")
    def get_session(project_id: str, authorization: str | None = Header(None)):
        user_id = participant(project_id, authorization)
        config = _config(project_id)
        role_id = store.current_role(project_id, user_id)
        return {
            "user": user_id,
            "group": config.user_by_id()[user_id].group,
            "role": role_id,
            "state": store.get_state(project_id),
            "completion": (
                _completion(config, project_id, user_id, role_id) if role_id else None
            ),
        }

    @app.post("/projects/{project_id}/session")
    def post_session(body: dict, project_id: str, authorization: str | None = Header(None)):
        user_id = participant(project_id, authorization)
        config = _config(project_id)
        role_id = body.get("role")
        if role_id not in config.role_ids():
            raise ValidationError(f"unknown role {role_id!r}")
        store.bind_role(project_id, user_id, role_id)
        return {"user": user_id, "role": role_id}

    @app.post("/projects/{project_id}/role-dice")
    def role_dice(project_id: str, authorization: str | None = Header(None)):
        user_id = participant(project_id, authorization)
        config = _config(project_id)
        roles = config.role_ids()
        if not roles:
            raise ConfigurationError("no roles configured")
        role_id = rng.choice(roles)
        store.bind_role(project_id, user_id, role_id)
        return {"user": user_id, "role": role_id}

    @app.post("/projects/{project_id}/submissions", status_code=201)
    def post_submission(body: dict, project_id: str, authorization: str | None = Header(None)):
        user_id = participant(project_id, authorization)
        config = _config(project_id)
        if store.get_state(project_id) != COLLECTING:
            raise StateError("project is not collecting submissions")
        role_id = body.get("role") or store.current_role(project_id, user_id)
        if role_id is None:
            raise ValidationError("no role bound; choose one or throw the dice")
        if role_id not in config.role_ids():
            raise ValidationError(f"unknown role {role_id!r}")
        bound = store.current_role(project_id, user_id)
        if bound is None:
            store.bind_role(project_id, user_id, role_id)
        elif bound != role_id:
            raise ConflictError(
                f"role {bound} is bound for this pass; restart the session to switch"
            )
        alternative = body.get("alternative")
        if alternative not in config.alternative_ids():
            raise ValidationError(f"unknown alternative {alternative!r}")
        test = body.get("test")
        if test not in {c.kind for c in config.criteria}:
            raise ValidationError(f"test {test!r} is not enabled")
        payload = body.get("payload") or {}
        response = parse_payload(test, payload)  # full payload validation
        if test == ACC and not config.user_by_id()[user_id].is_expert:
            raise AuthorizationError("accessibility verdicts are expert-only")
        if test == UT:
            from .scoring import ut_user_metrics

            ut_user_metrics(response.tasks, config.ut_definitions())
        store.add_submission(
            project_id,
            Submission(user_id, role_id, alternative, test, payload),
        )
        return {
            "accepted": True,
            "completion": _completion(config, project_id, user_id, role_id),
        }

    # ---- results ----
    @app.post("/projects/{project_id}/compute")
    def compute(project_id: str = Depends(moderator)):
        config = _config(project_id)
        submissions = store.submissions(project_id)
        result = evaluate(config, submissions)
        bundle = compose_report(result)
        store.cache_bundle(project_id, bundle)
        return {"report": bundle, "stale": False}

    @app.get("/projects/{project_id}/report")
    def report(
        project_id: str,
        format: str = Query("structured", pattern="^(structured|text)$"),
        authorization: str | None = Header(None),
    ):
        token = _token(authorization)
        if token != store.moderator_token(project_id) and (
            store.participant_by_token(project_id, token) is None
        ):
            raise HTTPException(403, "unknown token")
        bundle, stale = store.cached_bundle(project_id)
        if bundle is None:
            raise HTTPException(404, "no results computed yet")
        if format == "text":
            return PlainTextResponse(render_text(bundle))
        return {"report": bundle, "stale": stale}

    @app.get("/projects/{project_id}/export")
    def export(project_id: str = Depends(moderator)):
        config = _config(project_id)
        submissions = store.submissions(project_id)
        return {
            "config": config.to_json(),
            "responses": [
                {
                    "user": s.user_id,
                    "role": s.role_id,
                    "alternative": s.alternative_id,
                    "test": s.test,
                    "payload": s.payload,
                    "received_at": s.received_at,
                }
                for s in submissions
            ],
        }

    @app.post("/projects/{project_id}/import")
    def import_dataset(body: dict, project_id: str = Depends(moderator)):
        if store.get_state(project_id) != COLLECTING:
            raise StateError("open the project for collection before importing")
        submissions = submissions_from_dataset(body)
        config = _config(project_id)
        accepted = 0
        for submission in submissions:
            parse_payload(submission.test, submission.payload)
            if submission.test == ACC and not config.user_by_id()[
                submission.user_id
            ].is_expert:
                raise AuthorizationError(
                    f"accessibility verdict from non-expert {submission.user_id}"
                )
            store.add_submission(project_id, submission)
            accepted += 1
        return {"accepted": accepted}

    return app
