"""Token-level diffing, scoped global replacement with preview, and TM.

The edit pipeline: page edits are diffed against saved baselines into
replacement rules, previewed over a page scope, and applied with
provenance highlights. Pure target-target edits also feed the
translation memory, which replays them on other projects.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Sequence

from .errors import MalformedLine, UnknownPage
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
from .tokenizer import Token, tokenize

if TYPE_CHECKING:  # pragma: no cover
    from .audit import EventLog


@dataclass(frozen=True)
class TokenEdit:
    """One contiguous token-level change between two texts.

    ``old_text``/``new_text`` are substrings of the diffed texts (empty
    for pure insertions/deletions). The token ranges locate the change so
    a patch can be replayed positionally.
    """

    old_text: str
    new_text: str
    old_char_span: tuple[int, int]
    old_token_range: tuple[int, int]
    new_token_range: tuple[int, int]

    @property
    def pair(self) -> tuple[str, str]:
        return (self.old_text, self.new_text)


def _lcs_matches(old: Sequence[str], new: Sequence[str]) -> list[tuple[int, int]]:
    """Matched (old_index, new_index) pairs of a longest common subsequence."""
    n, m = len(old), len(new)
    table = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        row = table[i]
        prev = table[i - 1]
        oi = old[i - 1]
        for j in range(1, m + 1):
            if oi == new[j - 1]:
                row[j] = prev[j - 1] + 1
            else:
                row[j] = prev[j] if prev[j] >= row[j - 1] else row[j - 1]
    matches: list[tuple[int, int]] = []
    i, j = n, m
    while i > 0 and j > 0:
        if old[i - 1] == new[j - 1] and table[i][j] == table[i - 1][j - 1] + 1:
            matches.append((i - 1, j - 1))
            i -= 1
            j -= 1
        elif table[i - 1][j] >= table[i][j - 1]:
            i -= 1
        else:
            j -= 1
    matches.reverse()
    return matches


def diff_segments(old_text: str, new_text: str, lang: str = "") -> list[TokenEdit]:
    """Token-level LCS diff between two NFC-normalized texts.

    Contiguous runs of non-matching tokens on either side merge into one
    :class:`TokenEdit`; pure insertions have empty ``old_text``, pure
    deletions empty ``new_text``.
    """
    old_tokens = tokenize(old_text)
    new_tokens = tokenize(new_text)
    old_surfaces = [t.surface for t in old_tokens]
    new_surfaces = [t.surface for t in new_tokens]
    matches = _lcs_matches(old_surfaces, new_surfaces)

    edits: list[TokenEdit] = []

    def emit(o_lo: int, o_hi: int, n_lo: int, n_hi: int) -> None:
        if o_lo == o_hi and n_lo == n_hi:
            return
        if o_lo < o_hi:
            o_span = (old_tokens[o_lo].start, old_tokens[o_hi - 1].end)
            o_text = old_text[o_span[0] : o_span[1]]
        else:
            anchor = old_tokens[o_lo].start if o_lo < len(old_tokens) else len(old_text)
            o_span = (anchor, anchor)
            o_text = ""
        if n_lo < n_hi:
            n_text = new_text[new_tokens[n_lo].start : new_tokens[n_hi - 1].end]
        else:
            n_text = ""
        edits.append(TokenEdit(o_text, n_text, o_span, (o_lo, o_hi), (n_lo, n_hi)))

    prev_o, prev_n = 0, 0
    for o_idx, n_idx in matches:
        emit(prev_o, o_idx, prev_n, n_idx)
        prev_o, prev_n = o_idx + 1, n_idx + 1
    emit(prev_o, len(old_tokens), prev_n, len(new_tokens))
    return edits


def patch_tokens(old_surfaces: Sequence[str], edits: Iterable[TokenEdit]) -> list[str]:
    """Replay a diff over a token sequence, yielding the new surfaces."""
    out: list[str] = []
    pos = 0
    for edit in edits:
        o_lo, o_hi = edit.old_token_range
        out.extend(old_surfaces[pos:o_lo])
        out.extend(t.surface for t in tokenize(edit.new_text))
        pos = o_hi
    out.extend(old_surfaces[pos:])
    return out


class ReplacementScope(str, enum.Enum):
    CURRENT_PAGE = "CurrentPage"
    UNEDITED_PAGES = "UneditedPages"
    ALL_PAGES = "AllPages"


@dataclass(frozen=True)
class ReplacementRule:
    """Whole-token find/replace rule; ``replace`` may be empty (deletion)."""

    rule_id: str
    find: tuple[str, ...]
    replace: str
    provenance: Provenance = Provenance.GLOBAL

    def __post_init__(self) -> None:
        if not self.find:
            raise ValueError("find sequence must not be empty")


def make_rule(
    find: Sequence[str], replace: str, provenance: Provenance = Provenance.GLOBAL
) -> ReplacementRule:
    return ReplacementRule(_rule_id(find, replace), tuple(find), replace, provenance)


def _rule_id(find: Sequence[str], replace: str) -> str:
    key = "\x1f".join(find) + "\x1e" + replace
    return "r" + hashlib.sha1(key.encode("utf-8")).hexdigest()[:8]


@dataclass(frozen=True)
class Occurrence:
    segment_id: str
    span: tuple[int, int]  # char range in the segment's current text
    before_text: str
    after_text: str
    rule_id: str


@dataclass
class PagePreview:
    page_index: int
    occurrences: list[Occurrence]


@dataclass
class PreviewReport:
    pages: list[PagePreview]
    total_count: int


def collect_page_edits(project: Project, page_index: int) -> list[ReplacementRule]:
    """Turn a page's unsaved edits into deduplicated replacement rules.

    Each target segment is diffed against its saved baseline; pairs with
    non-empty old text become rules, pure insertions are dropped.
    """
    page = project.page(page_index)
    rules: list[ReplacementRule] = []
    seen: set[tuple[tuple[str, ...], str]] = set()
    for seg in page.target_segments:
        baseline = page.baselines.get(seg.id, "")
        if baseline == seg.text:
            continue
        for edit in diff_segments(baseline, seg.text):
            if not edit.old_text:
                continue
            find = tuple(t.surface for t in tokenize(edit.old_text))
            key = (find, edit.new_text)
            if key in seen:
                continue
            seen.add(key)
            rules.append(make_rule(find, edit.new_text, Provenance.GLOBAL))
    return rules


def _pages_in_scope(
    project: Project, scope: ReplacementScope, current_page: int
) -> list[Page]:
    current = project.page(current_page)  # raises UnknownPage early
    if scope is ReplacementScope.CURRENT_PAGE:
        return [current]
    if scope is ReplacementScope.UNEDITED_PAGES:
        # The current page hosts the edits being globalized, so it is
        # included regardless of its status.
        return [
            p
            for p in project.pages
            if p.status is PageStatus.UNEDITED or p.index == current_page
        ]
    return list(project.pages)


def _scan_segment(
    segment: Segment, rules: Sequence[ReplacementRule]
) -> list[tuple[int, int, ReplacementRule]]:
    """Non-overlapping (tok_lo, tok_hi, rule) matches, leftmost first.

    At each token position the first-listed matching rule wins and the
    scan resumes past its match.
    """
    surfaces = [t.surface for t in segment.tokens]
    hits: list[tuple[int, int, ReplacementRule]] = []
    pos = 0
    while pos < len(surfaces):
        claimed = None
        for rule in rules:
            n = len(rule.find)
            if pos + n <= len(surfaces) and tuple(surfaces[pos : pos + n]) == rule.find:
                claimed = (pos, pos + n, rule)
                break
        if claimed is None:
            pos += 1
        else:
            hits.append(claimed)
            pos = claimed[1]
    return hits


def _plan(
    rules: Sequence[ReplacementRule],
    scope: ReplacementScope,
    project: Project,
    current_page: int,
) -> list[tuple[Page, Segment, list[tuple[int, int, ReplacementRule]]]]:
    plan = []
    for page in _pages_in_scope(project, scope, current_page):
        for seg in page.target_segments:
            if not seg.tokens:
                continue
            hits = _scan_segment(seg, rules)
            if hits:
                plan.append((page, seg, hits))
    return plan


def preview(
    rules: Sequence[ReplacementRule],
    scope: ReplacementScope,
    project: Project,
    current_page: int,
) -> PreviewReport:
    """Enumerate, without mutating, every replacement ``apply`` would make."""
    pages: dict[int, list[Occurrence]] = {}
    total = 0
    for page, seg, hits in _plan(rules, scope, project, current_page):
        for tok_lo, tok_hi, rule in hits:
            start, end = seg.token_char_span(tok_lo, tok_hi)
            pages.setdefault(page.index, []).append(
                Occurrence(seg.id, (start, end), seg.text[start:end], rule.replace, rule.rule_id)
            )
            total += 1
    return PreviewReport(
        [PagePreview(idx, occs) for idx, occs in sorted(pages.items())], total
    )


def replace_in_segment(
    segment: Segment,
    span: tuple[int, int],
    new_text: str,
    provenance: Provenance,
    rule_id: str,
) -> None:
    """Splice ``new_text`` over ``span`` and maintain highlights.

    Existing highlights overlapping the span are dropped; highlights to
    the right shift by the length delta; the new text (if any) gains a
    highlight with the given provenance.
    """
    _replace_spans(segment, [(span, new_text, provenance, rule_id)])


def _replace_spans(
    segment: Segment,
    replacements: list[tuple[tuple[int, int], str, Provenance, str]],
) -> None:
    """Apply non-overlapping span replacements (any order given, applied right-to-left)."""
    for (start, end), new_text, provenance, rule_id in sorted(
        replacements, key=lambda r: r[0][0], reverse=True
    ):
        delta = len(new_text) - (end - start)
        survivors: list[Highlight] = []
        for h in segment.highlights:
            if h.start < end and start < h.end:
                continue  # overlaps the replaced span: provenance is stale
            if h.start >= end:
                survivors.append(Highlight(h.start + delta, h.end + delta, h.provenance, h.rule_id))
            else:
                survivors.append(h)
        segment.highlights = survivors
        if new_text:
            segment.highlights.append(
                Highlight(start, start + len(new_text), provenance, rule_id)
            )
        segment.text = segment.text[:start] + new_text + segment.text[end:]
    segment.highlights.sort(key=lambda h: h.start)
    segment.retokenize()


def apply(
    rules: Sequence[ReplacementRule],
    scope: ReplacementScope,
    project: Project,
    current_page: int,
    author: str,
    log: "EventLog | None" = None,
    timestamp_ms: int | None = None,
) -> tuple[Project, int]:
    """Perform exactly the replacements :func:`preview` reports.

    Every replaced span gains a highlight with the rule's provenance and
    emits an edit record; one ReplacementApplied log event is recorded
    per (page, rule). The version bumps once for the whole batch, and the
    modified segments' baselines refresh so tool-made replacements do not
    resurface as user edits at the next page save.
    """
    ts = now_ms() if timestamp_ms is None else timestamp_ms
    plan = _plan(rules, scope, project, current_page)
    applied = 0
    per_page_rule: dict[tuple[int, str], int] = {}
    for page, seg, hits in plan:
        spans = []
        for tok_lo, tok_hi, rule in hits:
            start, end = seg.token_char_span(tok_lo, tok_hi)
            before = seg.text[start:end]
            kind = EditKind.TM if rule.provenance is Provenance.TM else EditKind.GLOBAL
            project.edit_history.append(
                EditRecord(page.index, seg.id, before, rule.replace, kind, author, ts)
            )
            spans.append(((start, end), rule.replace, rule.provenance, rule.rule_id))
            per_page_rule[(page.index, rule.rule_id)] = (
                per_page_rule.get((page.index, rule.rule_id), 0) + 1
            )
            applied += 1
        _replace_spans(seg, spans)
        page.baselines[seg.id] = seg.text
    project.bump()
    if log is not None:
        from .audit import LogEvent

        for (page_index, rule_id), count in sorted(per_page_rule.items()):
            log.record_clamped(
                LogEvent(
                    kind="ReplacementApplied",
                    page_index=page_index,
                    author=author,
                    ts_ms=ts,
                    scope=scope.value,
                    rule_id=rule_id,
                    count=count,
                )
            )
    return project, applied


def save_page(
    project: Project,
    page_index: int,
    author: str,
    log: "EventLog | None" = None,
    timestamp_ms: int | None = None,
) -> list[ReplacementRule]:
    """Save a page: collect its edit rules, then refresh the baselines."""
    page = project.page(page_index)
    rules = collect_page_edits(project, page_index)
    page.baselines = {seg.id: seg.text for seg in page.target_segments}
    project.bump()
    if log is not None:
        from .audit import LogEvent

        ts = now_ms() if timestamp_ms is None else timestamp_ms
        log.record_clamped(LogEvent(kind="PageSaved", page_index=page_index, author=author, ts_ms=ts))
    return rules


@dataclass(frozen=True)
class TmEntry:
    old: str
    new: str
    source_project: str
    timestamp_ms: int


@dataclass
class TranslationMemory:
    entries: list[TmEntry] = field(default_factory=list)

    def pairs(self) -> set[tuple[str, str]]:
        return {(e.old, e.new) for e in self.entries}


def record_tm(
    tm: TranslationMemory,
    edits: Iterable[TokenEdit],
    source_project: str,
    timestamp_ms: int | None = None,
) -> TranslationMemory:
    """Append each (old, new) diff pair with non-empty old, deduplicated."""
    ts = now_ms() if timestamp_ms is None else timestamp_ms
    known = tm.pairs()
    for edit in edits:
        if not edit.old_text:
            continue
        pair = (edit.old_text, edit.new_text)
        if pair in known:
            continue
        known.add(pair)
        tm.entries.append(TmEntry(edit.old_text, edit.new_text, source_project, ts))
    return tm


_TM_HEADER = "old\tnew\tproject\ttimestamp"


def _escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def _unescape(value: str) -> str:
    out: list[str] = []
    it = iter(range(len(value)))
    i = 0
    while i < len(value):
        ch = value[i]
        if ch == "\\" and i + 1 < len(value):
            nxt = value[i + 1]
            out.append({"t": "\t", "n": "\n", "\\": "\\"}.get(nxt, "\\" + nxt))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def dumps_tm(tm: TranslationMemory) -> str:
    lines = [_TM_HEADER]
    for e in tm.entries:
        lines.append(
            "\t".join((_escape(e.old), _escape(e.new), _escape(e.source_project), str(e.timestamp_ms)))
        )
    return "\n".join(lines) + "\n"


def loads_tm(text: str) -> TranslationMemory:
    lines = text.splitlines()
    if not lines or lines[0] != _TM_HEADER:
        raise MalformedLine(1, f"expected header {_TM_HEADER!r}")
    tm = TranslationMemory()
    known: set[tuple[str, str]] = set()
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cols = line.split("\t")
        if len(cols) != 4:
            raise MalformedLine(line_no, f"expected 4 columns, found {len(cols)}")
        try:
            ts = int(cols[3])
        except ValueError as exc:
            raise MalformedLine(line_no, f"bad timestamp {cols[3]!r}") from exc
        old, new = _unescape(cols[0]), _unescape(cols[1])
        if (old, new) in known:
            continue
        known.add((old, new))
        tm.entries.append(TmEntry(old, new, _unescape(cols[2]), ts))
    return tm


def export_tm(tm: TranslationMemory, path) -> None:
    from pathlib import Path

    Path(path).write_text(dumps_tm(tm), encoding="utf-8")


def import_tm(path) -> TranslationMemory:
    from pathlib import Path

    return loads_tm(Path(path).read_text(encoding="utf-8"))


def apply_tm(
    tm: TranslationMemory,
    project: Project,
    author: str,
    log: "EventLog | None" = None,
    timestamp_ms: int | None = None,
) -> tuple[Project, int]:
    """Replay the TM over all pages as blue-provenance replacement rules."""
    rules: list[ReplacementRule] = []
    seen: set[tuple[tuple[str, ...], str]] = set()
    for entry in tm.entries:
        find = tuple(t.surface for t in tokenize(entry.old))
        if not find:
            continue
        key = (find, entry.new)
        if key in seen:
            continue
        seen.add(key)
        rules.append(make_rule(find, entry.new, Provenance.TM))
    if not rules or not project.pages:
        return project, 0
    return apply(
        rules,
        ReplacementScope.ALL_PAGES,
        project,
        project.pages[0].index,
        author,
        log,
        timestamp_ms,
    )
