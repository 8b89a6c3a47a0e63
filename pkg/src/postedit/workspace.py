"""Workspace directory: owns projects, per-project locks, logs, snapshots.

Layout under the workspace root::

    projects/<id>/state.zip        current saved project state
    projects/<id>/snapshots/       content-addressed snapshot store
    projects/<id>/logs/<author>.jsonl   live append-only event streams
    mirror/<id>/                   default sync mirror (LocalDirBackend)
    tokens.json                    static auth table: token -> author/role

One writer lock per project serializes mutations; readers get the same
in-memory aggregate, so they always see a committed state.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .align import (
    DEFAULT_GREEDY_FLOOR,
    DEFAULT_INTERSECT_THRESHOLD,
    AlignmentLinkSet,
    default_similarity,
    greedy_align,
    intersect_align,
)
from .audit import DEFAULT_IDLE_CAP_MS, dumps_events
from .bundle import load_archive, load_project, save_project
from .errors import UnknownProject
from .lexicon import Suggestion, suggest
from .model import Page, Project, Role, Segment
from .snapshots import LocalDirBackend, SnapshotStore


@dataclass
class Config:
    idle_cap_ms: int = DEFAULT_IDLE_CAP_MS
    intersect_threshold: float = DEFAULT_INTERSECT_THRESHOLD
    greedy_floor: float = DEFAULT_GREEDY_FLOOR
    decoder: str = "greedy"  # "greedy" | "intersect"


@dataclass(frozen=True)
class SessionContext:
    author: str
    role: Role
    token: str = ""


def links_for_pair(
    project: Project, src: Segment, tgt: Segment, config: Config
) -> AlignmentLinkSet:
    """Decode word links for one segment pair.

    Uses the bundle-supplied matrix when present (and consistent with the
    token counts), otherwise the built-in bigram similarity.
    """
    if not src.tokens or not tgt.tokens:
        return AlignmentLinkSet(frozenset())
    matrix = project.matrices.get(src.id)
    if matrix is None or matrix.n_src != len(src.tokens) or matrix.n_tgt != len(tgt.tokens):
        matrix = default_similarity(src.tokens, tgt.tokens)
    if config.decoder == "intersect":
        return intersect_align(matrix, config.intersect_threshold)
    return greedy_align(matrix, config.greedy_floor)


def page_word_links(
    project: Project, page: Page, config: Config
) -> list[tuple[str, str, AlignmentLinkSet]]:
    sources = {seg.id: seg for seg in page.source_segments}
    out = []
    for tgt in page.target_segments:
        if not tgt.origin_id or tgt.origin_id not in sources:
            continue
        src = sources[tgt.origin_id]
        out.append((src.id, tgt.id, links_for_pair(project, src, tgt, config)))
    return out


def suggestions_for_page(
    project: Project, page_index: int, config: Config
) -> list[Suggestion]:
    """All lexicon suggestions for a page, in segment order."""
    page = project.page(page_index)
    sources = {seg.id: seg for seg in page.source_segments}
    suggestions: list[Suggestion] = []
    for tgt in page.target_segments:
        if not tgt.origin_id or tgt.origin_id not in sources:
            continue
        src = sources[tgt.origin_id]
        links = links_for_pair(project, src, tgt, config)
        for name in project.lexicon_names:
            lexicon = project.lexicons.get(name)
            if lexicon is None:
                continue
            suggestions.extend(suggest(src, tgt, links, lexicon))
    return suggestions


def _safe_name(author: str) -> str:
    cleaned = re.sub(r"[^A-Za-z0-9._-]", "_", author)
    return cleaned or "anon"


class Workspace:
    def __init__(self, root: str | Path, config: Config | None = None):
        self.root = Path(root)
        self.config = config or Config()
        (self.root / "projects").mkdir(parents=True, exist_ok=True)
        self._projects: dict[str, Project] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._flushed: dict[str, int] = {}
        self._registry_lock = threading.Lock()

    # -- project registry ------------------------------------------------

    def project_dir(self, project_id: str) -> Path:
        return self.root / "projects" / project_id

    def list_ids(self) -> list[str]:
        ids = set(self._projects)
        for state in (self.root / "projects").glob("*/state.zip"):
            ids.add(state.parent.name)
        return sorted(ids)

    def lock(self, project_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(project_id, threading.Lock())

    def add_project(self, zip_bytes: bytes) -> Project:
        """Ingest an archive (MT bundle or saved state) and persist it."""
        project = load_archive(zip_bytes)
        with self.lock(project.id):
            self._projects[project.id] = project
            self._flushed[project.id] = len(project.ensure_log().events)
            self.persist(project)
        return project

    def get(self, project_id: str) -> Project:
        if project_id in self._projects:
            return self._projects[project_id]
        state = self.project_dir(project_id) / "state.zip"
        if not state.exists():
            raise UnknownProject(f"no project {project_id!r} in workspace")
        project = load_project(state.read_bytes())
        self._projects[project_id] = project
        self._flushed[project_id] = len(project.ensure_log().events)
        return project

    def persist(self, project: Project) -> None:
        """Write state.zip and flush new log events to per-author files."""
        pdir = self.project_dir(project.id)
        pdir.mkdir(parents=True, exist_ok=True)
        (pdir / "state.zip").write_bytes(save_project(project))
        log = project.ensure_log()
        start = self._flushed.get(project.id, 0)
        fresh = log.events[start:]
        if fresh:
            logs_dir = pdir / "logs"
            logs_dir.mkdir(exist_ok=True)
            by_author: dict[str, list] = {}
            for ev in fresh:
                by_author.setdefault(ev.author, []).append(ev)
            for author, events in by_author.items():
                path = logs_dir / f"{_safe_name(author)}.jsonl"
                with path.open("a", encoding="utf-8") as fh:
                    fh.write(dumps_events(events))
            self._flushed[project.id] = len(log.events)

    # -- snapshots & sync ------------------------------------------------

    def snapshot_store(self, project_id: str) -> SnapshotStore:
        return SnapshotStore(self.project_dir(project_id) / "snapshots")

    def mirror_backend(self, project_id: str, mirror: str | Path | None = None) -> LocalDirBackend:
        base = Path(mirror) if mirror else self.root / "mirror" / project_id
        return LocalDirBackend(base)

    # -- auth --------------------------------------------------------------

    def tokens_path(self) -> Path:
        return self.root / "tokens.json"

    def load_tokens(self) -> dict[str, SessionContext]:
        path = self.tokens_path()
        if not path.exists():
            return {}
        payload = json.loads(path.read_text(encoding="utf-8"))
        table: dict[str, SessionContext] = {}
        for token, entry in payload.items():
            table[token] = SessionContext(
                author=entry["author"], role=Role(entry["role"]), token=token
            )
        return table

    def write_default_tokens(self) -> dict[str, SessionContext]:
        """Seed a usable token table when none exists (one per role)."""
        defaults = {
            "corrector-token": {"author": "corrector", "role": "Corrector"},
            "verifier-token": {"author": "verifier", "role": "Verifier"},
            "proofreader-token": {"author": "proofreader", "role": "Proofreader"},
        }
        self.tokens_path().write_text(
            json.dumps(defaults, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        return self.load_tokens()

    def resolve_token(self, token: Optional[str]) -> Optional[SessionContext]:
        if token is None:
            return None
        return self.load_tokens().get(token)
