"""Project archives: MT bundle ingestion and deterministic state save/load.

Two archive flavors share one zip layout. A raw MT bundle carries a
manifest plus per-page source/target text (and optional renders,
alignment matrices, lexicons, TM, logs); ingestion segments the texts and
assigns segment ids. A saved project additionally carries
``project.json`` with the full model state, which round-trips exactly:
``load(save(p)) == p`` and ``save(load(save(p)))`` is byte-identical.
"""

from __future__ import annotations

import io
import json
import zipfile
from dataclasses import dataclass, field
from typing import Optional

from .align import format_matrix, parse_matrix
from .audit import EventLog, dumps_events, loads_events
from .editing import TranslationMemory, dumps_tm, loads_tm
from .errors import (
    MalformedBundle,
    MalformedMatrix,
    MissingManifest,
    MissingReferencedFile,
    UnsupportedVersion,
)
from .lexicon import Lexicon, parse_lexicon
from .model import (
    EditKind,
    EditRecord,
    Highlight,
    Page,
    PageStatus,
    Project,
    Provenance,
    Segment,
    now_ms,
)
from .tokenizer import BoundingBox, nfc, split_sentences

FORMAT_VERSION = 1
MANIFEST_NAME = "manifest.json"
STATE_NAME = "project.json"


@dataclass
class PageRef:
    index: int
    source: Optional[str] = None
    target: Optional[str] = None
    source_render: Optional[str] = None


@dataclass
class BundleManifest:
    format_version: int
    project_id: str
    name: str
    source_lang: str
    target_lang: str
    pages: list[PageRef] = field(default_factory=list)
    lexicons: list[str] = field(default_factory=list)
    kind: str = "mt-bundle"  # or "project-state"

    @classmethod
    def from_json(cls, payload: dict) -> "BundleManifest":
        try:
            project = payload.get("project", {})
            pages = [
                PageRef(
                    index=p["index"],
                    source=p.get("source"),
                    target=p.get("target"),
                    source_render=p.get("source_render"),
                )
                for p in payload.get("pages", [])
            ]
            return cls(
                format_version=payload["format_version"],
                project_id=project["id"],
                name=project.get("name", project["id"]),
                source_lang=project.get("source_lang", ""),
                target_lang=project.get("target_lang", ""),
                pages=pages,
                lexicons=list(payload.get("lexicons", [])),
                kind=payload.get("kind", "mt-bundle"),
            )
        except KeyError as exc:
            raise MalformedBundle(f"manifest missing field {exc}") from exc

    def to_json(self) -> dict:
        pages = []
        for ref in self.pages:
            entry: dict = {"index": ref.index}
            if ref.source is not None:
                entry["source"] = ref.source
            if ref.target is not None:
                entry["target"] = ref.target
            if ref.source_render is not None:
                entry["source_render"] = ref.source_render
            pages.append(entry)
        return {
            "format_version": self.format_version,
            "kind": self.kind,
            "project": {
                "id": self.project_id,
                "name": self.name,
                "source_lang": self.source_lang,
                "target_lang": self.target_lang,
            },
            "page_count": len(self.pages),
            "pages": pages,
            "lexicons": self.lexicons,
        }


def _open_zip(data: bytes) -> zipfile.ZipFile:
    try:
        return zipfile.ZipFile(io.BytesIO(data))
    except zipfile.BadZipFile as exc:
        raise MalformedBundle("not a readable zip archive") from exc


def _read_manifest(zf: zipfile.ZipFile) -> BundleManifest:
    names = set(zf.namelist())
    if MANIFEST_NAME not in names:
        raise MissingManifest(f"archive has no {MANIFEST_NAME}")
    try:
        payload = json.loads(zf.read(MANIFEST_NAME).decode("utf-8"))
    except (ValueError, UnicodeDecodeError) as exc:
        raise MalformedBundle("manifest is not valid JSON") from exc
    manifest = BundleManifest.from_json(payload)
    if manifest.format_version != FORMAT_VERSION:
        raise UnsupportedVersion(
            f"format_version {manifest.format_version} not supported"
        )
    return manifest


def _read_member(zf: zipfile.ZipFile, name: str) -> bytes:
    try:
        return zf.read(name)
    except KeyError as exc:
        raise MissingReferencedFile(f"manifest references missing file {name!r}") from exc


def _segment_page_text(
    raw: str, lang: str, page_index: int, side: str
) -> list[Segment]:
    text = nfc(raw)
    segments = []
    marker = "s" if side == "source" else "t"
    for i, span in enumerate(split_sentences(text, lang), start=1):
        segments.append(
            Segment.create(f"p{page_index}{marker}{i}", text[span.start : span.end])
        )
    return segments


def load_bundle(zip_bytes: bytes) -> Project:
    """Ingest a raw MT bundle into a fresh project.

    Page texts are sentence-split and tokenized, segment ids assigned
    (``p{page}s{n}`` / ``p{page}t{n}``), targets paired with the
    same-ranked source sentence, and every page starts Unedited.
    """
    with _open_zip(zip_bytes) as zf:
        manifest = _read_manifest(zf)
        names = set(zf.namelist())
        project = Project(
            id=manifest.project_id,
            name=manifest.name,
            source_lang=manifest.source_lang,
            target_lang=manifest.target_lang,
            created_at_ms=now_ms(),
        )
        project.ensure_tm()
        project.ensure_log()

        refs = sorted(manifest.pages, key=lambda r: r.index)
        for pos, ref in enumerate(refs, start=1):
            if ref.index != pos:
                raise MalformedBundle(
                    f"page indices must be contiguous from 1, found {ref.index} at rank {pos}"
                )
            source_text = (
                _read_member(zf, ref.source).decode("utf-8") if ref.source else ""
            )
            target_text = (
                _read_member(zf, ref.target).decode("utf-8") if ref.target else ""
            )
            page = Page(index=ref.index)
            page.source_segments = _segment_page_text(
                source_text, project.source_lang, ref.index, "source"
            )
            page.target_segments = _segment_page_text(
                target_text, project.target_lang, ref.index, "target"
            )
            for i, seg in enumerate(page.target_segments):
                if i < len(page.source_segments):
                    seg.origin_id = page.source_segments[i].id
            page.baselines = {seg.id: seg.text for seg in page.target_segments}
            if ref.source_render:
                page.source_render = ref.source_render
                project.renders[ref.source_render] = _read_member(zf, ref.source_render)
            project.pages.append(page)

        for lex_ref in manifest.lexicons:
            raw = _read_member(zf, lex_ref).decode("utf-8")
            name = lex_ref.rsplit("/", 1)[-1].rsplit(".", 1)[0]
            lex = parse_lexicon(raw, name, project.source_lang, project.target_lang)
            project.lexicons[name] = lex
            project.lexicon_names.append(name)

        sources_by_id = {
            seg.id: seg for page in project.pages for seg in page.source_segments
        }
        targets_by_origin = {
            seg.origin_id: seg
            for page in project.pages
            for seg in page.target_segments
            if seg.origin_id
        }
        for name in sorted(names):
            if not name.startswith("alignments/") or not name.endswith(".mat"):
                continue
            src_id = name[len("alignments/") : -len(".mat")]
            matrix = parse_matrix(zf.read(name).decode("utf-8"))
            src = sources_by_id.get(src_id)
            tgt = targets_by_origin.get(src_id)
            if src is not None and tgt is not None:
                if matrix.n_src != len(src.tokens) or matrix.n_tgt != len(tgt.tokens):
                    raise MalformedMatrix(
                        f"{name}: {matrix.n_src}x{matrix.n_tgt} does not match "
                        f"{len(src.tokens)}x{len(tgt.tokens)} tokens"
                    )
            project.matrices[src_id] = matrix

        tm_entries = TranslationMemory()
        for name in sorted(names):
            if name.startswith("tm/") and name.endswith(".tsv"):
                for entry in loads_tm(zf.read(name).decode("utf-8")).entries:
                    if (entry.old, entry.new) not in tm_entries.pairs():
                        tm_entries.entries.append(entry)
        project.tm = tm_entries

        events = []
        for name in sorted(names):
            if name.startswith("logs/") and name.endswith(".jsonl"):
                events.extend(loads_events(zf.read(name).decode("utf-8")))
        events.sort(key=lambda ev: ev.ts_ms)
        log = EventLog()
        log.events = events
        project.log = log
        return project


def _state_json(project: Project) -> dict:
    def seg_json(seg: Segment) -> dict:
        return {
            "id": seg.id,
            "text": seg.text,
            "origin_id": seg.origin_id,
            "bbox": [seg.bbox.x, seg.bbox.y, seg.bbox.w, seg.bbox.h] if seg.bbox else None,
            "highlights": [
                {
                    "start": h.start,
                    "end": h.end,
                    "provenance": h.provenance.value,
                    "rule_id": h.rule_id,
                }
                for h in seg.highlights
            ],
        }

    return {
        "id": project.id,
        "name": project.name,
        "source_lang": project.source_lang,
        "target_lang": project.target_lang,
        "version": project.version,
        "created_at_ms": project.created_at_ms,
        "lexicon_names": list(project.lexicon_names),
        "pages": [
            {
                "index": page.index,
                "status": page.status.value,
                "source_render": page.source_render,
                "source_segments": [seg_json(s) for s in page.source_segments],
                "target_segments": [seg_json(s) for s in page.target_segments],
                "baselines": page.baselines,
            }
            for page in project.pages
        ],
        "edit_history": [
            {
                "page": r.page_index,
                "segment": r.segment_id,
                "old": r.old_text,
                "new": r.new_text,
                "kind": r.kind.value,
                "author": r.author,
                "ts": r.timestamp_ms,
            }
            for r in project.edit_history
        ],
    }


def _segment_from_json(payload: dict) -> Segment:
    bbox = None
    if payload.get("bbox"):
        x, y, w, h = payload["bbox"]
        bbox = BoundingBox(x, y, w, h)
    seg = Segment.create(payload["id"], payload["text"], payload.get("origin_id"), bbox)
    seg.highlights = [
        Highlight(h["start"], h["end"], Provenance(h["provenance"]), h["rule_id"])
        for h in payload.get("highlights", [])
    ]
    return seg


def _project_from_state(payload: dict) -> Project:
    project = Project(
        id=payload["id"],
        name=payload["name"],
        source_lang=payload["source_lang"],
        target_lang=payload["target_lang"],
        version=payload["version"],
        created_at_ms=payload["created_at_ms"],
        lexicon_names=list(payload.get("lexicon_names", [])),
    )
    for p in payload.get("pages", []):
        page = Page(
            index=p["index"],
            status=PageStatus(p["status"]),
            source_render=p.get("source_render"),
        )
        page.source_segments = [_segment_from_json(s) for s in p.get("source_segments", [])]
        page.target_segments = [_segment_from_json(s) for s in p.get("target_segments", [])]
        page.baselines = dict(p.get("baselines", {}))
        project.pages.append(page)
    project.edit_history = [
        EditRecord(
            r["page"], r["segment"], r["old"], r["new"], EditKind(r["kind"]),
            r["author"], r["ts"],
        )
        for r in payload.get("edit_history", [])
    ]
    return project


def _lexicon_tsv(lex: Lexicon) -> str:
    lines = []
    for entry in lex.entries:
        lines.append(
            "\t".join((" ".join(entry.source_term), "|".join(entry.target_terms), entry.domain))
        )
    return "\n".join(lines) + "\n"


def save_project(project: Project) -> bytes:
    """Serialize the full project state into a deterministic zip.

    Stable member order, fixed in-archive timestamps, stored (not
    deflated) members, and canonical JSON keep the bytes identical across
    runs and platforms.
    """
    members: dict[str, bytes] = {}
    manifest = BundleManifest(
        format_version=FORMAT_VERSION,
        project_id=project.id,
        name=project.name,
        source_lang=project.source_lang,
        target_lang=project.target_lang,
        pages=[
            PageRef(index=p.index, source_render=p.source_render) for p in project.pages
        ],
        lexicons=[f"lexicons/{name}.tsv" for name in project.lexicon_names],
        kind="project-state",
    )
    members[MANIFEST_NAME] = _dump_json(manifest.to_json())
    members[STATE_NAME] = _dump_json(_state_json(project))
    for src_id, matrix in project.matrices.items():
        members[f"alignments/{src_id}.mat"] = format_matrix(matrix).encode("utf-8")
    for name in project.lexicon_names:
        members[f"lexicons/{name}.tsv"] = _lexicon_tsv(project.lexicons[name]).encode("utf-8")
    members["tm/default.tsv"] = dumps_tm(project.ensure_tm()).encode("utf-8")
    members["logs/events.jsonl"] = dumps_events(project.ensure_log().events).encode("utf-8")
    for render_name, data in project.renders.items():
        members[render_name] = data

    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w", compression=zipfile.ZIP_STORED) as zf:
        for name in sorted(members):
            info = zipfile.ZipInfo(name, date_time=(1980, 1, 1, 0, 0, 0))
            info.external_attr = 0o644 << 16
            zf.writestr(info, members[name])
    return buf.getvalue()


def _dump_json(payload: dict) -> bytes:
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=1).encode("utf-8")


def load_project(zip_bytes: bytes) -> Project:
    """Load a saved project archive (inverse of :func:`save_project`)."""
    with _open_zip(zip_bytes) as zf:
        manifest = _read_manifest(zf)
        names = set(zf.namelist())
        if STATE_NAME not in names:
            raise MissingReferencedFile(f"saved project lacks {STATE_NAME}")
        try:
            payload = json.loads(zf.read(STATE_NAME).decode("utf-8"))
        except ValueError as exc:
            raise MalformedBundle("project state is not valid JSON") from exc
        project = _project_from_state(payload)

        for name in sorted(names):
            if name.startswith("alignments/") and name.endswith(".mat"):
                src_id = name[len("alignments/") : -len(".mat")]
                project.matrices[src_id] = parse_matrix(zf.read(name).decode("utf-8"))
        for name in project.lexicon_names:
            raw = _read_member(zf, f"lexicons/{name}.tsv").decode("utf-8")
            project.lexicons[name] = parse_lexicon(
                raw, name, project.source_lang, project.target_lang
            )
        if "tm/default.tsv" in names:
            project.tm = loads_tm(zf.read("tm/default.tsv").decode("utf-8"))
        else:
            project.ensure_tm()
        log = EventLog()
        if "logs/events.jsonl" in names:
            log.events = loads_events(zf.read("logs/events.jsonl").decode("utf-8"))
        project.log = log
        for page in project.pages:
            if page.source_render:
                project.renders[page.source_render] = _read_member(zf, page.source_render)
        return project


def load_archive(zip_bytes: bytes) -> Project:
    """Open either archive flavor: saved state if present, else MT bundle."""
    with _open_zip(zip_bytes) as zf:
        is_state = STATE_NAME in set(zf.namelist())
    return load_project(zip_bytes) if is_state else load_bundle(zip_bytes)
