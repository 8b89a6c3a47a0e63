"""Export the target document as plain text, HTML, or LaTeX source.

Provenance highlights survive export: HTML spans carry the
global/dictionary/tm classes, LaTeX wraps the spans in color macros.
"""

from __future__ import annotations

import enum
import html as html_mod

from .model import PROVENANCE_CLASS, Project, Provenance, Segment


class ExportFormat(str, enum.Enum):
    PLAIN_TEXT = "PlainText"
    HTML = "HTML"
    LATEX = "LaTeX"


def export(project: Project, fmt: ExportFormat) -> bytes:
    if fmt is ExportFormat.PLAIN_TEXT:
        return _plain_text(project).encode("utf-8")
    if fmt is ExportFormat.HTML:
        return _html(project).encode("utf-8")
    return _latex(project).encode("utf-8")


def _plain_text(project: Project) -> str:
    pages = [
        "\n".join(seg.text for seg in page.target_segments) for page in project.pages
    ]
    return "\f".join(pages)


def _segment_parts(seg: Segment) -> list[tuple[str, Provenance | None]]:
    """Split text into (chunk, provenance-or-None) runs, in order."""
    parts: list[tuple[str, Provenance | None]] = []
    pos = 0
    for h in sorted(seg.highlights, key=lambda h: h.start):
        if h.start > pos:
            parts.append((seg.text[pos : h.start], None))
        parts.append((seg.text[h.start : h.end], h.provenance))
        pos = h.end
    if pos < len(seg.text):
        parts.append((seg.text[pos:], None))
    return parts


def _html(project: Project) -> str:
    out = [
        "<!DOCTYPE html>",
        f'<html lang="{html_mod.escape(project.target_lang, quote=True)}">',
        "<head>",
        '<meta charset="utf-8"/>',
        f"<title>{html_mod.escape(project.name)}</title>",
        "<style>",
        ".global { background: #ffe066; }",
        ".dictionary { background: #8ce99a; }",
        ".tm { background: #74c0fc; }",
        "</style>",
        "</head>",
        "<body>",
    ]
    for page in project.pages:
        out.append(f'<section class="page" data-page="{page.index}">')
        for seg in page.target_segments:
            chunks = []
            for text, provenance in _segment_parts(seg):
                escaped = html_mod.escape(text)
                if provenance is None:
                    chunks.append(escaped)
                else:
                    chunks.append(
                        f'<span class="{PROVENANCE_CLASS[provenance]}">{escaped}</span>'
                    )
            out.append(
                f'<p class="segment" data-segment="{html_mod.escape(seg.id, quote=True)}">'
                + "".join(chunks)
                + "</p>"
            )
        out.append("</section>")
    out.extend(["</body>", "</html>"])
    return "\n".join(out) + "\n"


_LATEX_SPECIALS = {
    "\\": r"\textbackslash{}",
    "&": r"\&",
    "%": r"\%",
    "$": r"\$",
    "#": r"\#",
    "_": r"\_",
    "{": r"\{",
    "}": r"\}",
    "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}",
}

_LATEX_MACRO = {
    Provenance.GLOBAL: "hlglobal",
    Provenance.DICTIONARY: "hldictionary",
    Provenance.TM: "hltm",
}


def _latex_escape(text: str) -> str:
    return "".join(_LATEX_SPECIALS.get(ch, ch) for ch in text)


def _latex(project: Project) -> str:
    out = [
        r"\documentclass{article}",
        r"\usepackage{xcolor}",
        r"\newcommand{\hlglobal}[1]{\colorbox{yellow}{#1}}",
        r"\newcommand{\hldictionary}[1]{\colorbox{green}{#1}}",
        r"\newcommand{\hltm}[1]{\colorbox{blue}{#1}}",
        r"\begin{document}",
    ]
    for page in project.pages:
        out.append(rf"\section*{{Page {page.index}}}")
        for seg in page.target_segments:
            chunks = []
            for text, provenance in _segment_parts(seg):
                escaped = _latex_escape(text)
                if provenance is None:
                    chunks.append(escaped)
                else:
                    chunks.append(rf"\{_LATEX_MACRO[provenance]}{{{escaped}}}")
            out.append("".join(chunks))
            out.append("")
    out.append(r"\end{document}")
    return "\n".join(out) + "\n"
