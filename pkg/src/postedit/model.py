"""Document/project data model: projects, pages, segments, highlights, roles.

A :class:`Project` is a single mutable aggregate. Every successful
mutating operation bumps ``version`` exactly once; callers that need
serialized writes (the HTTP service) hold one writer lock per project.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

from .errors import IllegalTransition, UnknownPage, UnknownSegment
from .tokenizer import BoundingBox, Token, nfc, tokenize

if TYPE_CHECKING:  # pragma: no cover - import cycle guard for type checkers
    from .align import SimilarityMatrix
    from .audit import EventLog
    from .editing import TranslationMemory
    from .lexicon import Lexicon


def now_ms() -> int:
    """Current UTC time in milliseconds."""
    return int(time.time() * 1000)


class Provenance(str, enum.Enum):
    """Where a highlighted span came from; fixes its UI color."""

    GLOBAL = "GlobalReplacement"  # yellow
    DICTIONARY = "DictionaryReplacement"  # green
    TM = "TmReplacement"  # blue


#: CSS class / export class per provenance.
PROVENANCE_CLASS = {
    Provenance.GLOBAL: "global",
    Provenance.DICTIONARY: "dictionary",
    Provenance.TM: "tm",
}

#: Display color per provenance.
PROVENANCE_COLOR = {
    Provenance.GLOBAL: "yellow",
    Provenance.DICTIONARY: "green",
    Provenance.TM: "blue",
}


class PageStatus(str, enum.Enum):
    UNEDITED = "Unedited"
    EDITED = "Edited"
    VERIFIED = "Verified"
    PROOFREAD = "Proofread"


class Role(str, enum.Enum):
    CORRECTOR = "Corrector"
    VERIFIER = "Verifier"
    PROOFREADER = "Proofreader"


#: role -> (status it may leave, status it may enter)
ROLE_TRANSITIONS = {
    Role.CORRECTOR: (PageStatus.UNEDITED, PageStatus.EDITED),
    Role.VERIFIER: (PageStatus.EDITED, PageStatus.VERIFIED),
    Role.PROOFREADER: (PageStatus.VERIFIED, PageStatus.PROOFREAD),
}


class EditKind(str, enum.Enum):
    MANUAL = "Manual"
    GLOBAL = "Global"
    DICTIONARY = "Dictionary"
    TM = "TM"


@dataclass
class EditRecord:
    """One recorded edit; feeds the audit trail and per-page counters."""

    page_index: int
    segment_id: str
    old_text: str
    new_text: str
    kind: EditKind
    author: str
    timestamp_ms: int


@dataclass
class Highlight:
    """Half-open char span with replacement provenance."""

    start: int
    end: int
    provenance: Provenance
    rule_id: str

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass
class Segment:
    """A sentence-level unit. ``tokens`` is derived from ``text``."""

    id: str
    text: str
    tokens: list[Token] = field(default_factory=list)
    origin_id: Optional[str] = None
    highlights: list[Highlight] = field(default_factory=list)
    bbox: Optional[BoundingBox] = None

    @classmethod
    def create(
        cls,
        seg_id: str,
        text: str,
        origin_id: str | None = None,
        bbox: BoundingBox | None = None,
    ) -> "Segment":
        text = nfc(text)
        return cls(seg_id, text, tokenize(text), origin_id, [], bbox)

    def retokenize(self) -> None:
        self.tokens = tokenize(self.text)

    def token_char_span(self, tok_start: int, tok_end: int) -> tuple[int, int]:
        """Char span covering tokens [tok_start, tok_end)."""
        if not (0 <= tok_start < tok_end <= len(self.tokens)):
            raise ValueError("token range out of bounds")
        return (self.tokens[tok_start].start, self.tokens[tok_end - 1].end)


@dataclass
class Page:
    index: int
    source_segments: list[Segment] = field(default_factory=list)
    target_segments: list[Segment] = field(default_factory=list)
    status: PageStatus = PageStatus.UNEDITED
    source_render: Optional[str] = None  # archive-relative image name
    # target segment id -> text at the last page save (or ingestion);
    # save-time diffing runs against these.
    baselines: dict[str, str] = field(default_factory=dict)

    def find_segment(self, segment_id: str) -> Segment:
        for seg in self.target_segments:
            if seg.id == segment_id:
                return seg
        for seg in self.source_segments:
            if seg.id == segment_id:
                return seg
        raise UnknownSegment(f"no segment {segment_id!r} on page {self.index}")


@dataclass
class Project:
    id: str
    name: str
    source_lang: str
    target_lang: str
    pages: list[Page] = field(default_factory=list)
    lexicon_names: list[str] = field(default_factory=list)
    version: int = 1
    created_at_ms: int = 0
    edit_history: list[EditRecord] = field(default_factory=list)
    # source segment id -> similarity matrix supplied by the bundle
    matrices: dict[str, "SimilarityMatrix"] = field(default_factory=dict)
    lexicons: dict[str, "Lexicon"] = field(default_factory=dict)
    renders: dict[str, bytes] = field(default_factory=dict)
    tm: Optional["TranslationMemory"] = None
    log: Optional["EventLog"] = None

    def ensure_tm(self) -> "TranslationMemory":
        if self.tm is None:
            from .editing import TranslationMemory

            self.tm = TranslationMemory()
        return self.tm

    def ensure_log(self) -> "EventLog":
        if self.log is None:
            from .audit import EventLog

            self.log = EventLog()
        return self.log

    def page(self, page_index: int) -> Page:
        for p in self.pages:
            if p.index == page_index:
                return p
        raise UnknownPage(f"project {self.id!r} has no page {page_index}")

    def bump(self) -> int:
        self.version += 1
        return self.version

    def all_segment_ids(self) -> list[str]:
        ids: list[str] = []
        for p in self.pages:
            ids.extend(s.id for s in p.source_segments)
            ids.extend(s.id for s in p.target_segments)
        return ids


def set_segment_text(
    project: Project,
    page_index: int,
    segment_id: str,
    new_text: str,
    author: str,
    log: "EventLog | None" = None,
    timestamp_ms: int | None = None,
) -> Project:
    """Replace a segment's text wholesale.

    The text is NFC-normalized and retokenized, a Manual edit record is
    appended, and the version bumps even for an identity edit. Highlights
    cannot be mapped across a whole-segment rewrite, so they are dropped
    unless the text is unchanged.
    """
    page = project.page(page_index)
    seg = page.find_segment(segment_id)
    ts = now_ms() if timestamp_ms is None else timestamp_ms
    new_text = nfc(new_text)
    old_text = seg.text
    if new_text != old_text:
        seg.text = new_text
        seg.retokenize()
        seg.highlights = []
    project.edit_history.append(
        EditRecord(page_index, segment_id, old_text, new_text, EditKind.MANUAL, author, ts)
    )
    project.bump()
    if log is not None:
        from .audit import LogEvent

        log.record_clamped(LogEvent(kind="EditApplied", page_index=page_index, author=author, ts_ms=ts))
    return project


def transition_status(
    project: Project,
    page_index: int,
    role: Role,
    author: str = "",
    log: "EventLog | None" = None,
    timestamp_ms: int | None = None,
) -> Project:
    """Advance a page along Unedited -> Edited -> Verified -> Proofread.

    Each role may perform exactly one transition; anything else raises
    :class:`IllegalTransition`. Demotion is not supported.
    """
    page = project.page(page_index)
    allowed_from, to_status = ROLE_TRANSITIONS[role]
    if page.status != allowed_from:
        raise IllegalTransition(
            f"{role.value} cannot move page {page_index} out of {page.status.value}"
        )
    page.status = to_status
    project.bump()
    if log is not None:
        from .audit import LogEvent

        ts = now_ms() if timestamp_ms is None else timestamp_ms
        log.record_clamped(
            LogEvent(kind="StatusChanged", page_index=page_index, author=author, ts_ms=ts)
        )
    return project


def sentence_links(page: Page) -> list[tuple[str, str]]:
    """(source_id, target_id) pairs, one per target with an origin, in target order."""
    return [
        (seg.origin_id, seg.id) for seg in page.target_segments if seg.origin_id is not None
    ]
