"""Whitespace/punctuation tokenization and sentence segmentation.

Both operations work for Latin and Devanagari scripts. They expect
NFC-normalized input (see :func:`nfc`); token and sentence spans index
into the exact string that was passed in.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

#: Characters that terminate a sentence when followed by whitespace or
#: end of text. Includes the Devanagari danda and double danda.
SENTENCE_TERMINATORS = frozenset(".!?।॥")


def nfc(text: str) -> str:
    """NFC-normalize ``text``. All stored segment text goes through this."""
    return unicodedata.normalize("NFC", text)


@dataclass(frozen=True)
class BoundingBox:
    """Normalized page-relative box; x, y, w, h all within [0, 1]."""

    x: float
    y: float
    w: float
    h: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.x and 0.0 <= self.y and self.w >= 0.0 and self.h >= 0.0):
            raise ValueError("bounding box coordinates must be non-negative")
        if self.x + self.w > 1.0 + 1e-9 or self.y + self.h > 1.0 + 1e-9:
            raise ValueError("bounding box exceeds the unit square")


@dataclass(frozen=True)
class Token:
    """A token and its half-open character span in the owning text."""

    surface: str
    start: int
    end: int
    bbox: Optional[BoundingBox] = None

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True)
class SentenceSpan:
    """Half-open character range of one sentence in a page's raw text."""

    start: int
    end: int


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def tokenize(text: str, lang: str = "") -> list[Token]:
    """Split ``text`` into word and punctuation tokens.

    Tokens are split on whitespace; every punctuation character (including
    the danda and double danda) is a token of its own. Joining surfaces
    with the original inter-token gaps reconstructs the input exactly.
    """
    tokens: list[Token] = []
    start: int | None = None
    for i, ch in enumerate(text):
        if ch.isspace():
            if start is not None:
                tokens.append(Token(text[start:i], start, i))
                start = None
        elif _is_punct(ch):
            if start is not None:
                tokens.append(Token(text[start:i], start, i))
                start = None
            tokens.append(Token(ch, i, i + 1))
        else:
            if start is None:
                start = i
    if start is not None:
        tokens.append(Token(text[start:], start, len(text)))
    return tokens


def surfaces(tokens: Iterable[Token]) -> list[str]:
    return [t.surface for t in tokens]


def detokenize(text: str, tokens: list[Token]) -> str:
    """Rebuild ``text`` from its tokens plus the recorded gaps."""
    out: list[str] = []
    pos = 0
    for t in tokens:
        out.append(text[pos : t.start])
        out.append(t.surface)
        pos = t.end
    out.append(text[pos:])
    return "".join(out)


_DEFAULT_ABBREVIATIONS: frozenset[str] | None = None


def load_abbreviations(path: str | Path) -> frozenset[str]:
    """Read an abbreviation guard list: one abbreviation per line, UTF-8."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return frozenset(line.strip() for line in lines if line.strip())


def default_abbreviations() -> frozenset[str]:
    global _DEFAULT_ABBREVIATIONS
    if _DEFAULT_ABBREVIATIONS is None:
        data = resources.files("postedit").joinpath("data/abbreviations.txt")
        text = data.read_text(encoding="utf-8")
        _DEFAULT_ABBREVIATIONS = frozenset(
            line.strip() for line in text.splitlines() if line.strip()
        )
    return _DEFAULT_ABBREVIATIONS


def split_sentences(
    text: str,
    lang: str = "",
    abbreviations: frozenset[str] | None = None,
) -> list[SentenceSpan]:
    """Split ``text`` into sentence spans.

    A sentence ends after '.', '!', '?', danda, or double danda when the
    terminator is followed by whitespace or end of text. A terminator that
    completes a guarded abbreviation ("Dr.", "e.g.", ...) does not split.
    Trailing unterminated text forms a final sentence. Spans cover every
    non-whitespace character and carry no leading/trailing whitespace.
    """
    if abbreviations is None:
        abbreviations = default_abbreviations()

    boundaries: list[int] = []  # index one past each sentence-final terminator
    for i, ch in enumerate(text):
        if ch not in SENTENCE_TERMINATORS:
            continue
        if i + 1 < len(text) and not text[i + 1].isspace():
            continue
        if ch == ".":
            j = i
            while j > 0 and not text[j - 1].isspace():
                j -= 1
            if text[j : i + 1] in abbreviations:
                continue
        boundaries.append(i + 1)

    spans: list[SentenceSpan] = []
    pos = 0
    for bound in boundaries + [len(text)]:
        chunk = text[pos:bound]
        lead = len(chunk) - len(chunk.lstrip())
        trail = len(chunk.rstrip())
        if trail > lead:
            spans.append(SentenceSpan(pos + lead, pos + trail))
        pos = bound
    return spans
