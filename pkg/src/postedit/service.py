"""HTTP JSON API over a workspace of projects.

Writes are optimistic: clients echo the project version they saw and get
409 when it is stale. Page-timing events (PageOpened and friends) are
client-reported through POST /projects/{id}/events; GETs never log.
"""

from __future__ import annotations

from typing import Optional

from fastapi import Depends, FastAPI, Header, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import audit, editing
from .editing import ReplacementRule, ReplacementScope
from .errors import (
    BackendUnavailable,
    Conflict,
    IllegalTransition,
    PosteditError,
    StaleSuggestion,
    UnknownPage,
    UnknownProject,
    UnknownSegment,
)
from .export import ExportFormat, export
from .lexicon import LexiconEntry, Suggestion, apply_suggestion
from .model import (
    Page,
    Project,
    Provenance,
    Segment,
    set_segment_text,
    transition_status,
    sentence_links,
)
from .snapshots import SyncDirection, sync
from .transliterate import slp1_to_devanagari
from .workspace import (
    SessionContext,
    Workspace,
    page_word_links,
    suggestions_for_page,
)

EXPORT_MEDIA_TYPES = {
    ExportFormat.PLAIN_TEXT: "text/plain; charset=utf-8",
    ExportFormat.HTML: "text/html; charset=utf-8",
    ExportFormat.LATEX: "application/x-latex",
}


class HttpError(Exception):
    def __init__(self, status_code: int, detail: str):
        self.status_code = status_code
        self.detail = detail


class SegmentUpdate(BaseModel):
    new_text: str
    version: int


class RuleBody(BaseModel):
    rule_id: Optional[str] = None
    find: list[str] = Field(min_length=1)
    replace: str
    provenance: str = Provenance.GLOBAL.value


class ReplaceBody(BaseModel):
    rules: list[RuleBody] = Field(min_length=1)
    scope: str
    current_page: int
    version: Optional[int] = None


class SuggestionBody(BaseModel):
    segment_id: str
    target_span: tuple[int, int]
    current_text: str
    proposed_text: str
    source_term: list[str] = Field(min_length=1)
    alternatives: list[str] = Field(default_factory=list)
    version: Optional[int] = None


class EventBody(BaseModel):
    kind: str
    page: Optional[int] = None
    ts_ms: Optional[int] = None


class StatusBody(BaseModel):
    version: Optional[int] = None


class SnapshotBody(BaseModel):
    message: str = ""


class SyncBody(BaseModel):
    direction: str
    mirror: Optional[str] = None


class Slp1Body(BaseModel):
    text: str


def _segment_json(seg: Segment) -> dict:
    return {
        "id": seg.id,
        "text": seg.text,
        "origin_id": seg.origin_id,
        "tokens": [
            {"surface": t.surface, "start": t.start, "end": t.end} for t in seg.tokens
        ],
        "highlights": [
            {
                "start": h.start,
                "end": h.end,
                "provenance": h.provenance.value,
                "rule_id": h.rule_id,
            }
            for h in seg.highlights
        ],
        "bbox": [seg.bbox.x, seg.bbox.y, seg.bbox.w, seg.bbox.h] if seg.bbox else None,
    }


def _page_json(project: Project, page: Page, word_links) -> dict:
    return {
        "index": page.index,
        "status": page.status.value,
        "source_render": page.source_render,
        "source_segments": [_segment_json(s) for s in page.source_segments],
        "target_segments": [_segment_json(s) for s in page.target_segments],
        "sentence_links": [[s, t] for s, t in sentence_links(page)],
        "word_links": [
            {"source_id": src_id, "target_id": tgt_id, "links": [[i, j] for i, j in links]}
            for src_id, tgt_id, links in word_links
        ],
        "version": project.version,
    }


def _project_json(project: Project) -> dict:
    return {
        "id": project.id,
        "name": project.name,
        "source_lang": project.source_lang,
        "target_lang": project.target_lang,
        "version": project.version,
        "page_count": len(project.pages),
        "pages": [
            {"index": p.index, "status": p.status.value} for p in project.pages
        ],
        "lexicons": list(project.lexicon_names),
    }


def _rule_json(rule: ReplacementRule) -> dict:
    return {
        "rule_id": rule.rule_id,
        "find": list(rule.find),
        "replace": rule.replace,
        "provenance": rule.provenance.value,
    }


def _rules_from_body(body: ReplaceBody) -> list[ReplacementRule]:
    rules = []
    for rb in body.rules:
        provenance = Provenance(rb.provenance)
        if rb.rule_id:
            rules.append(ReplacementRule(rb.rule_id, tuple(rb.find), rb.replace, provenance))
        else:
            rules.append(editing.make_rule(rb.find, rb.replace, provenance))
    return rules


def _scope_from_name(name: str) -> ReplacementScope:
    try:
        return ReplacementScope(name)
    except ValueError:
        raise HttpError(422, f"unknown scope {name!r}")


def _suggestion_json(s: Suggestion) -> dict:
    return {
        "segment_id": s.segment_id,
        "target_span": list(s.target_span),
        "current_text": s.current_text,
        "proposed_text": s.proposed_text,
        "alternatives": list(s.entry.target_terms),
        "source_term": list(s.entry.source_term),
        "domain": s.entry.domain,
        "source_span": list(s.source_span),
    }


def create_app(workspace: Workspace) -> FastAPI:
    app = FastAPI(title="postedit service", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def session(
        x_auth_token: Optional[str] = Header(default=None),
    ) -> SessionContext:
        ctx = workspace.resolve_token(x_auth_token)
        if ctx is None:
            raise HttpError(401, "missing or unknown X-Auth-Token")
        return ctx

    def project_or_404(project_id: str) -> Project:
        try:
            return workspace.get(project_id)
        except UnknownProject as exc:
            raise HttpError(404, str(exc))

    @app.exception_handler(HttpError)
    async def _http_error(request: Request, exc: HttpError):
        return JSONResponse({"detail": exc.detail}, status_code=exc.status_code)

    @app.exception_handler(PosteditError)
    async def _domain_error(request: Request, exc: PosteditError):
        status = 422
        if isinstance(exc, (UnknownProject, UnknownPage, UnknownSegment)):
            status = 404
        elif isinstance(exc, (StaleSuggestion, Conflict)):
            status = 409
        elif isinstance(exc, IllegalTransition):
            status = 403
        elif isinstance(exc, BackendUnavailable):
            status = 503
        return JSONResponse({"detail": str(exc)}, status_code=status)

    @app.post("/projects", status_code=201)
    async def upload_project(request: Request, ctx: SessionContext = Depends(session)):
        data = await request.body()
        if not data:
            raise HttpError(422, "empty request body; send bundle zip bytes")
        project = workspace.add_project(data)
        return _project_json(project)

    @app.get("/projects")
    def list_projects(ctx: SessionContext = Depends(session)):
        return {"projects": workspace.list_ids()}

    @app.get("/projects/{project_id}")
    def get_project(project_id: str, ctx: SessionContext = Depends(session)):
        return _project_json(project_or_404(project_id))

    @app.get("/projects/{project_id}/pages/{page_index}")
    def get_page(
        project_id: str, page_index: int, ctx: SessionContext = Depends(session)
    ):
        project = project_or_404(project_id)
        page = project.page(page_index)
        links = page_word_links(project, page, workspace.config)
        return _page_json(project, page, links)

    @app.get("/projects/{project_id}/pages/{page_index}/render")
    def get_render(
        project_id: str, page_index: int, ctx: SessionContext = Depends(session)
    ):
        project = project_or_404(project_id)
        page = project.page(page_index)
        if not page.source_render or page.source_render not in project.renders:
            raise HttpError(404, f"page {page_index} has no source render")
        return Response(project.renders[page.source_render], media_type="image/png")

    @app.put("/projects/{project_id}/pages/{page_index}/segments/{segment_id}")
    def put_segment(
        project_id: str,
        page_index: int,
        segment_id: str,
        body: SegmentUpdate,
        ctx: SessionContext = Depends(session),
    ):
        project = project_or_404(project_id)
        with workspace.lock(project_id):
            if body.version != project.version:
                raise HttpError(409, f"stale version {body.version}, now {project.version}")
            set_segment_text(
                project, page_index, segment_id, body.new_text, ctx.author,
                log=project.ensure_log(),
            )
            workspace.persist(project)
            return {"version": project.version}

    @app.post("/projects/{project_id}/pages/{page_index}/save")
    def save_page(
        project_id: str, page_index: int, ctx: SessionContext = Depends(session)
    ):
        project = project_or_404(project_id)
        with workspace.lock(project_id):
            rules = editing.save_page(
                project, page_index, ctx.author, log=project.ensure_log()
            )
            workspace.persist(project)
            return {"rules": [_rule_json(r) for r in rules], "version": project.version}

    @app.post("/projects/{project_id}/replace/preview")
    def replace_preview(
        project_id: str, body: ReplaceBody, ctx: SessionContext = Depends(session)
    ):
        project = project_or_404(project_id)
        report = editing.preview(
            _rules_from_body(body),
            _scope_from_name(body.scope),
            project,
            body.current_page,
        )
        return {
            "pages": [
                {
                    "page_index": pp.page_index,
                    "occurrences": [
                        {
                            "segment_id": o.segment_id,
                            "span": list(o.span),
                            "before_text": o.before_text,
                            "after_text": o.after_text,
                            "rule_id": o.rule_id,
                        }
                        for o in pp.occurrences
                    ],
                }
                for pp in report.pages
            ],
            "total_count": report.total_count,
        }

    @app.post("/projects/{project_id}/replace/apply")
    def replace_apply(
        project_id: str, body: ReplaceBody, ctx: SessionContext = Depends(session)
    ):
        project = project_or_404(project_id)
        with workspace.lock(project_id):
            if body.version is not None and body.version != project.version:
                raise HttpError(409, f"stale version {body.version}, now {project.version}")
            _, count = editing.apply(
                _rules_from_body(body),
                _scope_from_name(body.scope),
                project,
                body.current_page,
                ctx.author,
                log=project.ensure_log(),
            )
            workspace.persist(project)
            return {"applied_count": count, "version": project.version}

    @app.get("/projects/{project_id}/pages/{page_index}/suggestions")
    def get_suggestions(
        project_id: str, page_index: int, ctx: SessionContext = Depends(session)
    ):
        project = project_or_404(project_id)
        project.page(page_index)  # 404 for unknown pages
        items = suggestions_for_page(project, page_index, workspace.config)
        return {"suggestions": [_suggestion_json(s) for s in items]}

    @app.post("/projects/{project_id}/suggestions/apply")
    def post_suggestion(
        project_id: str, body: SuggestionBody, ctx: SessionContext = Depends(session)
    ):
        project = project_or_404(project_id)
        with workspace.lock(project_id):
            if body.version is not None and body.version != project.version:
                raise HttpError(409, f"stale version {body.version}, now {project.version}")
            targets = [body.proposed_text] + [
                t for t in body.alternatives if t != body.proposed_text
            ]
            suggestion = Suggestion(
                segment_id=body.segment_id,
                target_span=tuple(body.target_span),
                current_text=body.current_text,
                proposed_text=body.proposed_text,
                entry=LexiconEntry(tuple(body.source_term), targets),
                source_span=(0, len(body.source_term)),
            )
            apply_suggestion(project, suggestion, ctx.author, log=project.ensure_log())
            workspace.persist(project)
            return {"version": project.version}

    @app.get("/projects/{project_id}/tm")
    def export_tm(project_id: str, ctx: SessionContext = Depends(session)):
        project = project_or_404(project_id)
        return Response(
            editing.dumps_tm(project.ensure_tm()),
            media_type="text/tab-separated-values; charset=utf-8",
        )

    @app.post("/projects/{project_id}/tm")
    async def import_tm(
        project_id: str, request: Request, ctx: SessionContext = Depends(session)
    ):
        project = project_or_404(project_id)
        data = (await request.body()).decode("utf-8")
        incoming = editing.loads_tm(data)
        with workspace.lock(project_id):
            tm = project.ensure_tm()
            known = tm.pairs()
            added = 0
            for entry in incoming.entries:
                if (entry.old, entry.new) in known:
                    continue
                known.add((entry.old, entry.new))
                tm.entries.append(entry)
                added += 1
            workspace.persist(project)
            return {"entries": len(tm.entries), "added": added}

    @app.post("/projects/{project_id}/tm/apply")
    def tm_apply(project_id: str, ctx: SessionContext = Depends(session)):
        project = project_or_404(project_id)
        with workspace.lock(project_id):
            _, count = editing.apply_tm(
                project.ensure_tm(), project, ctx.author, log=project.ensure_log()
            )
            workspace.persist(project)
            return {"applied_count": count, "version": project.version}

    @app.get("/projects/{project_id}/logs/summary")
    def logs_summary(project_id: str, ctx: SessionContext = Depends(session)):
        project = project_or_404(project_id)
        stats = audit.summary(project.ensure_log(), workspace.config.idle_cap_ms)
        return {
            "pages": [
                {
                    "page_index": s.page_index,
                    "edit_count": s.edit_count,
                    "active_time_ms": s.active_time_ms,
                }
                for s in stats
            ]
        }

    @app.post("/projects/{project_id}/pages/{page_index}/status")
    def post_status(
        project_id: str,
        page_index: int,
        body: StatusBody,
        ctx: SessionContext = Depends(session),
    ):
        project = project_or_404(project_id)
        with workspace.lock(project_id):
            if body.version is not None and body.version != project.version:
                raise HttpError(409, f"stale version {body.version}, now {project.version}")
            transition_status(
                project, page_index, ctx.role, ctx.author, log=project.ensure_log()
            )
            workspace.persist(project)
            return {
                "status": project.page(page_index).status.value,
                "version": project.version,
            }

    @app.post("/projects/{project_id}/events")
    def post_event(
        project_id: str, body: EventBody, ctx: SessionContext = Depends(session)
    ):
        project = project_or_404(project_id)
        with workspace.lock(project_id):
            from .model import now_ms

            log = project.ensure_log()
            try:
                log.record_clamped(
                    audit.LogEvent(
                        kind=body.kind,
                        author=ctx.author,
                        ts_ms=body.ts_ms if body.ts_ms is not None else now_ms(),
                        page_index=body.page,
                    )
                )
            except ValueError as exc:
                raise HttpError(422, str(exc))
            workspace.persist(project)
            return {"events": len(log.events)}

    @app.get("/projects/{project_id}/export")
    def get_export(
        project_id: str, format: str = "PlainText", ctx: SessionContext = Depends(session)
    ):
        project = project_or_404(project_id)
        try:
            fmt = ExportFormat(format)
        except ValueError:
            raise HttpError(422, f"unknown format {format!r}")
        return Response(export(project, fmt), media_type=EXPORT_MEDIA_TYPES[fmt])

    @app.post("/projects/{project_id}/snapshot")
    def post_snapshot(
        project_id: str, body: SnapshotBody, ctx: SessionContext = Depends(session)
    ):
        project = project_or_404(project_id)
        with workspace.lock(project_id):
            store = workspace.snapshot_store(project_id)
            snap = store.snapshot(project, body.message)
            return {
                "snapshot_id": snap.snapshot_id,
                "message": snap.message,
                "parent": snap.parent,
                "timestamp_ms": snap.timestamp_ms,
            }

    @app.post("/projects/{project_id}/sync")
    def post_sync(
        project_id: str, body: SyncBody, ctx: SessionContext = Depends(session)
    ):
        project_or_404(project_id)
        try:
            direction = SyncDirection(body.direction)
        except ValueError:
            raise HttpError(422, f"unknown direction {body.direction!r}")
        with workspace.lock(project_id):
            store = workspace.snapshot_store(project_id)
            backend = workspace.mirror_backend(project_id, body.mirror)
            status = sync(store, backend, direction)
            return {
                "direction": status.direction.value,
                "head": status.head,
                "transferred": status.transferred,
            }

    @app.post("/slp1")
    def post_slp1(body: Slp1Body, ctx: SessionContext = Depends(session)):
        return {"text": slp1_to_devanagari(body.text)}

    return app
