"""Word-alignment decoding over per-segment-pair similarity matrices.

Two decoders are provided: intersection of row- and column-softmaxed
scores against a threshold, and greedy iterative argmax with a floor.
Matrices are small (sentence-by-sentence), so everything is plain Python.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence

from .errors import InvalidThreshold, MalformedMatrix
from .tokenizer import Token

#: Post-softmax intersection threshold when none is configured.
DEFAULT_INTERSECT_THRESHOLD = 0.001
#: Floor for greedy decoding over the raw matrix.
DEFAULT_GREEDY_FLOOR = 0.0


@dataclass
class SimilarityMatrix:
    """n_src x n_tgt grid of finite real scores."""

    n_src: int
    n_tgt: int
    rows: list[list[float]]

    def __post_init__(self) -> None:
        if self.n_src <= 0 or self.n_tgt <= 0:
            raise ValueError("matrix dimensions must be positive")
        if len(self.rows) != self.n_src or any(len(r) != self.n_tgt for r in self.rows):
            raise ValueError("row data does not match the declared dimensions")
        for r in self.rows:
            for v in r:
                if not math.isfinite(v):
                    raise ValueError("matrix entries must be finite")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> "SimilarityMatrix":
        data = [list(map(float, r)) for r in rows]
        return cls(len(data), len(data[0]) if data else 0, data)


@dataclass(frozen=True)
class AlignmentLinkSet:
    """Decoded (src_index, tgt_index) links for one segment pair."""

    links: frozenset[tuple[int, int]]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.links))

    def __len__(self) -> int:
        return len(self.links)

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return pair in self.links


#: Maps (source tokens, target tokens) to a similarity matrix.
SimilarityProvider = Callable[[Sequence[Token], Sequence[Token]], SimilarityMatrix]


class Axis(enum.Enum):
    ROWS = "Rows"
    COLUMNS = "Columns"


def _softmax(values: list[float]) -> list[float]:
    m = max(values)
    exps = [math.exp(v - m) for v in values]
    total = sum(exps)
    return [v / total for v in exps]


def normalize(matrix: SimilarityMatrix, axis: Axis) -> SimilarityMatrix:
    """Softmax along the chosen axis; each row (or column) sums to 1."""
    if axis is Axis.ROWS:
        rows = [_softmax(r) for r in matrix.rows]
    else:
        cols = [_softmax([matrix.rows[i][j] for i in range(matrix.n_src)]) for j in range(matrix.n_tgt)]
        rows = [[cols[j][i] for j in range(matrix.n_tgt)] for i in range(matrix.n_src)]
    return SimilarityMatrix(matrix.n_src, matrix.n_tgt, rows)


def intersect_align(matrix: SimilarityMatrix, threshold: float = DEFAULT_INTERSECT_THRESHOLD) -> AlignmentLinkSet:
    """Keep cells whose row- and column-softmaxed scores both exceed ``threshold``."""
    if not (0.0 < threshold < 1.0):
        raise InvalidThreshold(f"threshold must lie in (0, 1), got {threshold}")
    s2t = normalize(matrix, Axis.ROWS)
    t2s = normalize(matrix, Axis.COLUMNS)
    links = {
        (i, j)
        for i in range(matrix.n_src)
        for j in range(matrix.n_tgt)
        if s2t.rows[i][j] > threshold and t2s.rows[i][j] > threshold
    }
    return AlignmentLinkSet(frozenset(links))


def greedy_align(matrix: SimilarityMatrix, floor: float = DEFAULT_GREEDY_FLOOR) -> AlignmentLinkSet:
    """Iteratively take the best unused (row, column) cell above ``floor``.

    Each selection retires its row and column, so the result is a partial
    one-to-one matching. Ties break toward the smallest source index,
    then the smallest target index.
    """
    used_rows: set[int] = set()
    used_cols: set[int] = set()
    links: set[tuple[int, int]] = set()
    while True:
        best: tuple[int, int] | None = None
        best_val = floor
        for i in range(matrix.n_src):
            if i in used_rows:
                continue
            row = matrix.rows[i]
            for j in range(matrix.n_tgt):
                if j in used_cols:
                    continue
                if row[j] > best_val:
                    best_val = row[j]
                    best = (i, j)
        if best is None:
            break
        links.add(best)
        used_rows.add(best[0])
        used_cols.add(best[1])
    return AlignmentLinkSet(frozenset(links))


def project_span(
    links: AlignmentLinkSet, src_token_range: tuple[int, int]
) -> Optional[tuple[int, int]]:
    """Carry a source token range onto the target side.

    Returns the tight [min, max+1) range of target indices linked to any
    source index in the range, or None when no link lands inside it.
    """
    lo, hi = src_token_range
    targets = [j for (i, j) in links.links if lo <= i < hi]
    if not targets:
        return None
    return (min(targets), max(targets) + 1)


def _bigrams(surface: str) -> set[str]:
    return {surface[k : k + 2] for k in range(len(surface) - 1)}


def default_similarity(
    src_tokens: Sequence[Token], tgt_tokens: Sequence[Token]
) -> SimilarityMatrix:
    """Character-bigram Dice similarity between case-folded token surfaces.

    Desk-scale stand-in used when a bundle ships no matrix for a segment
    pair. Single-character tokens have no bigrams; two such tokens score
    1.0 when equal, otherwise 0.0.
    """
    if not src_tokens or not tgt_tokens:
        raise ValueError("token lists must be non-empty")
    rows: list[list[float]] = []
    tgt_surfaces = [t.surface.casefold() for t in tgt_tokens]
    tgt_bigrams = [_bigrams(s) for s in tgt_surfaces]
    for s_tok in src_tokens:
        s_surface = s_tok.surface.casefold()
        s_bi = _bigrams(s_surface)
        row: list[float] = []
        for t_surface, t_bi in zip(tgt_surfaces, tgt_bigrams):
            if not s_bi and not t_bi:
                row.append(1.0 if s_surface == t_surface else 0.0)
            elif not s_bi or not t_bi:
                row.append(0.0)
            else:
                row.append(2.0 * len(s_bi & t_bi) / (len(s_bi) + len(t_bi)))
        rows.append(row)
    return SimilarityMatrix(len(src_tokens), len(tgt_tokens), rows)


def parse_matrix(text: str) -> SimilarityMatrix:
    """Parse the on-disk matrix format.

    First line: ``n_src n_tgt``; then n_src lines of n_tgt space-separated
    decimal floats.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MalformedMatrix("empty matrix file")
    head = lines[0].split()
    if len(head) != 2:
        raise MalformedMatrix(f"bad header line: {lines[0]!r}")
    try:
        n_src, n_tgt = int(head[0]), int(head[1])
    except ValueError as exc:
        raise MalformedMatrix(f"bad header line: {lines[0]!r}") from exc
    if n_src <= 0 or n_tgt <= 0:
        raise MalformedMatrix("matrix dimensions must be positive")
    if len(lines) - 1 != n_src:
        raise MalformedMatrix(f"expected {n_src} rows, found {len(lines) - 1}")
    rows: list[list[float]] = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != n_tgt:
            raise MalformedMatrix(f"expected {n_tgt} columns, found {len(parts)}")
        try:
            row = [float(p) for p in parts]
        except ValueError as exc:
            raise MalformedMatrix(f"bad value in row: {ln!r}") from exc
        if any(not math.isfinite(v) for v in row):
            raise MalformedMatrix("matrix entries must be finite")
        rows.append(row)
    return SimilarityMatrix(n_src, n_tgt, rows)


def format_matrix(matrix: SimilarityMatrix) -> str:
    lines = [f"{matrix.n_src} {matrix.n_tgt}"]
    lines.extend(" ".join(repr(v) for v in row) for row in matrix.rows)
    return "\n".join(lines) + "\n"
