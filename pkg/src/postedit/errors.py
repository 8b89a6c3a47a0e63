"""Exception hierarchy shared across the package."""

from __future__ import annotations


class PosteditError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class UnknownPage(PosteditError):
    exit_code = 3


class UnknownSegment(PosteditError):
    exit_code = 3


class UnknownProject(PosteditError):
    exit_code = 3


class IllegalTransition(PosteditError):
    """Page status transition not allowed for the given role/status."""

    exit_code = 4


class InvalidThreshold(PosteditError):
    """Intersection threshold outside the open interval (0, 1)."""


class InvalidSLP1Character(PosteditError):
    """Input character outside the SLP1 code set.

    ``position`` is the 0-based offset of the offending character.
    """

    def __init__(self, char: str, position: int):
        super().__init__(f"invalid SLP1 character {char!r} at position {position}")
        self.char = char
        self.position = position


class MalformedLine(PosteditError):
    """A line of a lexicon or TM file that does not parse.

    ``line_no`` is 1-based.
    """

    exit_code = 2

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class EmptyLexicon(PosteditError):
    exit_code = 2


class StaleSuggestion(PosteditError):
    """Segment text changed since the suggestion was computed."""

    exit_code = 4


class MissingManifest(PosteditError):
    exit_code = 2


class UnsupportedVersion(PosteditError):
    exit_code = 2


class MissingReferencedFile(PosteditError):
    exit_code = 2


class MalformedMatrix(PosteditError):
    exit_code = 2


class MalformedBundle(PosteditError):
    """Archive that is not a readable zip or has a broken layout."""

    exit_code = 2


class Conflict(PosteditError):
    """Sync found snapshot chains that diverge; nothing was changed."""

    exit_code = 4


class BackendUnavailable(PosteditError):
    exit_code = 5
