"""Offline-first post-editing workbench for machine-translated documents."""

from .align import (
    AlignmentLinkSet,
    Axis,
    SimilarityMatrix,
    default_similarity,
    greedy_align,
    intersect_align,
    normalize,
    project_span,
)
from .audit import EventLog, LogEvent, PageStats, page_time, record, summary
from .bundle import BundleManifest, load_archive, load_bundle, load_project, save_project
from .editing import (
    PreviewReport,
    ReplacementRule,
    ReplacementScope,
    TokenEdit,
    TranslationMemory,
    apply,
    apply_tm,
    collect_page_edits,
    diff_segments,
    export_tm,
    import_tm,
    preview,
    record_tm,
    save_page,
)
from .export import ExportFormat, export
from .lexicon import (
    Lexicon,
    LexiconEntry,
    Suggestion,
    apply_suggestion,
    find_matches,
    load_lexicon,
    suggest,
)
from .model import (
    BoundingBox,
    EditKind,
    EditRecord,
    Highlight,
    Page,
    PageStatus,
    Project,
    Provenance,
    Role,
    Segment,
    sentence_links,
    set_segment_text,
    transition_status,
)
from .snapshots import (
    GitBackend,
    LocalDirBackend,
    Snapshot,
    SnapshotStore,
    SyncDirection,
    sync,
)
from .tokenizer import SentenceSpan, Token, nfc, split_sentences, tokenize
from .transliterate import slp1_to_devanagari
from .workspace import Config, Workspace

__version__ = "0.1.0"
