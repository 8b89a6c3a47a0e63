"""Domain lexicons: loading, longest-match lookup, and target-side suggestions.

Lexicon files are UTF-8 TSV: ``source<TAB>target[<TAB>domain]``, with
'|' separating alternative targets and '#' starting comment lines.
Matching on the source side is case-folded (Devanagari has no case, so
this only affects Latin text).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Optional, Sequence

from .align import AlignmentLinkSet, project_span
from .errors import EmptyLexicon, MalformedLine, StaleSuggestion
from .model import (
    EditKind,
    EditRecord,
    Highlight,
    Project,
    Provenance,
    Segment,
    now_ms,
)
from .tokenizer import Token, nfc, tokenize

if TYPE_CHECKING:  # pragma: no cover
    from .audit import EventLog


@dataclass
class LexiconEntry:
    source_term: tuple[str, ...]  # token surfaces
    target_terms: list[str]  # alternatives; [0] is the canonical proposal
    domain: str = ""

    def __post_init__(self) -> None:
        if not self.source_term:
            raise ValueError("source term must not be empty")
        if not self.target_terms:
            raise ValueError("at least one target term is required")


@dataclass
class Lexicon:
    name: str
    source_lang: str = ""
    target_lang: str = ""
    entries: list[LexiconEntry] = field(default_factory=list)
    # case-folded first source token -> entries, longest source term first
    index: dict[str, list[LexiconEntry]] = field(default_factory=dict, repr=False)

    def build_index(self) -> None:
        self.index = {}
        for entry in self.entries:
            self.index.setdefault(entry.source_term[0].casefold(), []).append(entry)
        for bucket in self.index.values():
            bucket.sort(key=lambda e: -len(e.source_term))


@dataclass
class Suggestion:
    """A proposed target-side replacement derived from a lexicon hit."""

    segment_id: str
    target_span: tuple[int, int]  # char range in the target segment
    current_text: str
    proposed_text: str
    entry: LexiconEntry
    source_span: tuple[int, int]  # token range in the source segment


def parse_lexicon(
    text: str, name: str, source_lang: str = "", target_lang: str = ""
) -> Lexicon:
    """Parse lexicon TSV content. See :func:`load_lexicon` for the file API."""
    entries: dict[tuple[str, ...], LexiconEntry] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) < 2:
            raise MalformedLine(line_no, "expected source<TAB>target")
        source, target_field = cols[0].strip(), cols[1].strip()
        domain = cols[2].strip() if len(cols) > 2 else ""
        if not source or not target_field:
            raise MalformedLine(line_no, "empty source or target")
        source_tokens = tuple(t.surface for t in tokenize(nfc(source)))
        if not source_tokens:
            raise MalformedLine(line_no, "source term has no tokens")
        targets = [nfc(t.strip()) for t in target_field.split("|") if t.strip()]
        if not targets:
            raise MalformedLine(line_no, "no target alternatives")
        key = tuple(t.casefold() for t in source_tokens)
        if key in entries:
            existing = entries[key]
            for t in targets:  # dedup (source, target) pairs
                if t not in existing.target_terms:
                    existing.target_terms.append(t)
        else:
            entries[key] = LexiconEntry(source_tokens, targets, domain)
    if not entries:
        raise EmptyLexicon(f"lexicon {name!r} has no entries")
    lex = Lexicon(name, source_lang, target_lang, list(entries.values()))
    lex.build_index()
    return lex


def load_lexicon(path: str | Path, source_lang: str = "", target_lang: str = "") -> Lexicon:
    p = Path(path)
    return parse_lexicon(p.read_text(encoding="utf-8"), p.stem, source_lang, target_lang)


def find_matches(
    tokens: Sequence[Token], lexicon: Lexicon
) -> list[tuple[tuple[int, int], LexiconEntry]]:
    """Left-to-right longest-match scan of ``tokens`` against the lexicon.

    At each position the longest entry whose case-folded source tokens
    equal the upcoming tokens wins; the scan resumes after the match, so
    results never overlap.
    """
    folded = [t.surface.casefold() for t in tokens]
    matches: list[tuple[tuple[int, int], LexiconEntry]] = []
    pos = 0
    while pos < len(folded):
        hit: LexiconEntry | None = None
        for entry in lexicon.index.get(folded[pos], ()):
            n = len(entry.source_term)
            if pos + n > len(folded):
                continue
            if all(
                folded[pos + k] == entry.source_term[k].casefold() for k in range(n)
            ):
                hit = entry
                break  # buckets are longest-first
        if hit is None:
            pos += 1
        else:
            matches.append(((pos, pos + len(hit.source_term)), hit))
            pos += len(hit.source_term)
    return matches


def _is_latin(text: str) -> bool:
    return all(ord(ch) < 0x0370 for ch in text)


def _satisfies(current: str, target_terms: Sequence[str]) -> bool:
    current = current.strip()
    if _is_latin(current):
        current = current.casefold()
        return any(current == t.strip().casefold() for t in target_terms)
    return any(current == t.strip() for t in target_terms)


def suggest(
    source_segment: Segment,
    target_segment: Segment,
    links: AlignmentLinkSet,
    lexicon: Lexicon,
) -> list[Suggestion]:
    """Propose target edits for every lexicon hit on the source side.

    A hit is projected through the word links; hits with no projection
    are skipped, as are projections whose target text already equals one
    of the entry's alternatives.
    """
    suggestions: list[Suggestion] = []
    for (tok_lo, tok_hi), entry in find_matches(source_segment.tokens, lexicon):
        projected = project_span(links, (tok_lo, tok_hi))
        if projected is None:
            continue
        t_lo, t_hi = projected
        if t_hi > len(target_segment.tokens):
            continue
        start, end = target_segment.token_char_span(t_lo, t_hi)
        current = target_segment.text[start:end]
        if _satisfies(current, entry.target_terms):
            continue
        suggestions.append(
            Suggestion(
                segment_id=target_segment.id,
                target_span=(start, end),
                current_text=current,
                proposed_text=entry.target_terms[0],
                entry=entry,
                source_span=(tok_lo, tok_hi),
            )
        )
    return suggestions


def apply_suggestion(
    project: Project,
    suggestion: Suggestion,
    author: str,
    log: "EventLog | None" = None,
    timestamp_ms: int | None = None,
) -> Project:
    """Apply one suggestion; the new text gets a dictionary highlight.

    Raises :class:`StaleSuggestion` (leaving the project untouched) when
    the segment no longer carries ``current_text`` at the recorded span.
    """
    from .editing import replace_in_segment  # local import; editing builds on us

    page, segment = _locate(project, suggestion.segment_id)
    start, end = suggestion.target_span
    if segment.text[start:end] != suggestion.current_text:
        raise StaleSuggestion(
            f"segment {suggestion.segment_id!r} changed since the suggestion was made"
        )
    ts = now_ms() if timestamp_ms is None else timestamp_ms
    old_text = segment.text
    rule_id = f"dict:{lexicon_rule_id(suggestion.entry)}"
    replace_in_segment(
        segment,
        (start, end),
        suggestion.proposed_text,
        Provenance.DICTIONARY,
        rule_id,
    )
    project.edit_history.append(
        EditRecord(
            page.index,
            segment.id,
            old_text,
            segment.text,
            EditKind.DICTIONARY,
            author,
            ts,
        )
    )
    project.bump()
    if log is not None:
        from .audit import LogEvent

        log.record_clamped(
            LogEvent(
                kind="SuggestionApplied", page_index=page.index, author=author, ts_ms=ts
            )
        )
    return project


def lexicon_rule_id(entry: LexiconEntry) -> str:
    import hashlib

    key = "\x1f".join(entry.source_term) + "\x1e" + entry.target_terms[0]
    return hashlib.sha1(key.encode("utf-8")).hexdigest()[:8]


def _locate(project: Project, segment_id: str):
    for page in project.pages:
        for seg in page.target_segments:
            if seg.id == segment_id:
                return page, seg
        for seg in page.source_segments:
            if seg.id == segment_id:
                return page, seg
    from .errors import UnknownSegment

    raise UnknownSegment(f"no segment {segment_id!r} in project {project.id!r}")
