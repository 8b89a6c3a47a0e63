"""Append-only event log: edits, replacements, status changes, page timing.

Events are kept in arrival order and persisted as JSON lines, one stream
per author so concurrent writers never interleave partial lines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

#: Idle cap applied to page-open intervals when none is configured.
DEFAULT_IDLE_CAP_MS = 10 * 60 * 1000

EVENT_KINDS = frozenset(
    {
        "PageOpened",
        "PageSaved",
        "EditApplied",
        "ReplacementApplied",
        "SuggestionApplied",
        "StatusChanged",
        "SessionStarted",
        "SessionEnded",
    }
)


@dataclass(frozen=True)
class LogEvent:
    kind: str
    author: str
    ts_ms: int
    page_index: Optional[int] = None
    # ReplacementApplied payload
    scope: Optional[str] = None
    rule_id: Optional[str] = None
    count: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")
        if self.ts_ms < 0:
            raise ValueError("timestamp must be non-negative")
        if self.kind == "ReplacementApplied" and (self.count is None or self.count < 0):
            raise ValueError("ReplacementApplied events carry a non-negative count")

    def to_json(self) -> dict:
        payload = {"kind": self.kind, "author": self.author, "ts": self.ts_ms}
        if self.page_index is not None:
            payload["page"] = self.page_index
        if self.scope is not None:
            payload["scope"] = self.scope
        if self.rule_id is not None:
            payload["rule_id"] = self.rule_id
        if self.count is not None:
            payload["count"] = self.count
        return payload

    @classmethod
    def from_json(cls, payload: dict) -> "LogEvent":
        return cls(
            kind=payload["kind"],
            author=payload.get("author", ""),
            ts_ms=payload["ts"],
            page_index=payload.get("page"),
            scope=payload.get("scope"),
            rule_id=payload.get("rule_id"),
            count=payload.get("count"),
        )


@dataclass
class PageStats:
    page_index: int
    edit_count: int
    active_time_ms: int


@dataclass
class EventLog:
    events: list[LogEvent] = field(default_factory=list)

    def record(self, event: LogEvent) -> "EventLog":
        """Append one event; the log is never mutated or reordered.

        Timestamps must be non-decreasing within one author's stream.
        """
        last = self.last_timestamp(event.author)
        if last is not None and event.ts_ms < last:
            raise ValueError(
                f"timestamp {event.ts_ms} precedes {last} in {event.author!r}'s stream"
            )
        self.events.append(event)
        return self

    def record_clamped(self, event: LogEvent) -> LogEvent:
        """Append, bumping the timestamp up to the author's last if needed.

        Wall-clock call sites use this: client-reported and server-stamped
        events share author streams, so small clock races must not fail.
        """
        last = self.last_timestamp(event.author)
        if last is not None and event.ts_ms < last:
            event = replace(event, ts_ms=last)
        self.events.append(event)
        return event

    def last_timestamp(self, author: str) -> Optional[int]:
        for ev in reversed(self.events):
            if ev.author == author:
                return ev.ts_ms
        return None

    def authors(self) -> list[str]:
        seen: list[str] = []
        for ev in self.events:
            if ev.author not in seen:
                seen.append(ev.author)
        return seen


def record(log: EventLog, event: LogEvent) -> EventLog:
    return log.record(event)


def page_time(log: EventLog, page_index: int, idle_cap_ms: int = DEFAULT_IDLE_CAP_MS) -> int:
    """Active time on a page, in milliseconds.

    Each PageOpened(page) contributes the interval to the same author's
    next event (whatever the kind), capped at ``idle_cap_ms``. A trailing
    PageOpened with no following event contributes nothing.
    """
    if idle_cap_ms <= 0:
        raise ValueError("idle_cap_ms must be positive")
    total = 0
    by_author: dict[str, list[LogEvent]] = {}
    for ev in log.events:
        by_author.setdefault(ev.author, []).append(ev)
    for stream in by_author.values():
        for i, ev in enumerate(stream):
            if ev.kind != "PageOpened" or ev.page_index != page_index:
                continue
            if i + 1 < len(stream):
                total += min(stream[i + 1].ts_ms - ev.ts_ms, idle_cap_ms)
    return total


def summary(log: EventLog, idle_cap_ms: int = DEFAULT_IDLE_CAP_MS) -> list[PageStats]:
    """Per-page edit counts and active time, ordered by page index."""
    edit_counts: dict[int, int] = {}
    pages: set[int] = set()
    for ev in log.events:
        if ev.page_index is None:
            continue
        pages.add(ev.page_index)
        if ev.kind in ("EditApplied", "SuggestionApplied"):
            edit_counts[ev.page_index] = edit_counts.get(ev.page_index, 0) + 1
        elif ev.kind == "ReplacementApplied":
            edit_counts[ev.page_index] = edit_counts.get(ev.page_index, 0) + (ev.count or 0)
    return [
        PageStats(p, edit_counts.get(p, 0), page_time(log, p, idle_cap_ms))
        for p in sorted(pages)
    ]


def dumps_events(events: Iterable[LogEvent]) -> str:
    return "".join(
        json.dumps(ev.to_json(), ensure_ascii=False, sort_keys=True) + "\n" for ev in events
    )


def loads_events(text: str) -> list[LogEvent]:
    events: list[LogEvent] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        events.append(LogEvent.from_json(json.loads(line)))
    return events


def merge_streams(streams: Iterable[list[LogEvent]]) -> EventLog:
    """Merge per-author streams into one log ordered by timestamp.

    The merge is stable, so same-timestamp events keep their stream order.
    """
    merged: list[LogEvent] = []
    for stream in streams:
        merged.extend(stream)
    merged.sort(key=lambda ev: ev.ts_ms)
    log = EventLog()
    log.events = merged
    return log
