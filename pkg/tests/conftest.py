"""Shared fixtures: in-memory bundle construction and sample projects."""

from __future__ import annotations

import io
import json
import zipfile

import pytest

from postedit.bundle import load_bundle


def build_bundle(
    pages: list[tuple[str, str]],
    project_id: str = "demo",
    name: str = "Demo",
    source_lang: str = "en",
    target_lang: str = "hi",
    lexicons: dict[str, str] | None = None,
    matrices: dict[str, str] | None = None,
    renders: dict[int, bytes] | None = None,
    tm_files: dict[str, str] | None = None,
    log_files: dict[str, str] | None = None,
    manifest_override: dict | None = None,
    drop_manifest: bool = False,
) -> bytes:
    """Assemble a raw MT bundle zip from page text pairs."""
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w") as zf:
        page_refs = []
        for i, (src, tgt) in enumerate(pages, start=1):
            src_name = f"pages/{i:03d}/source.txt"
            tgt_name = f"pages/{i:03d}/target.txt"
            zf.writestr(src_name, src)
            zf.writestr(tgt_name, tgt)
            ref = {"index": i, "source": src_name, "target": tgt_name}
            if renders and i in renders:
                render_name = f"pages/{i:03d}/source.png"
                zf.writestr(render_name, renders[i])
                ref["source_render"] = render_name
            page_refs.append(ref)
        lex_refs = []
        for lex_name, content in (lexicons or {}).items():
            path = f"lexicons/{lex_name}.tsv"
            zf.writestr(path, content)
            lex_refs.append(path)
        for src_id, content in (matrices or {}).items():
            zf.writestr(f"alignments/{src_id}.mat", content)
        for tm_name, content in (tm_files or {}).items():
            zf.writestr(f"tm/{tm_name}.tsv", content)
        for log_name, content in (log_files or {}).items():
            zf.writestr(f"logs/{log_name}.jsonl", content)
        manifest = {
            "format_version": 1,
            "project": {
                "id": project_id,
                "name": name,
                "source_lang": source_lang,
                "target_lang": target_lang,
            },
            "pages": page_refs,
            "lexicons": lex_refs,
        }
        if manifest_override:
            manifest.update(manifest_override)
        if not drop_manifest:
            zf.writestr("manifest.json", json.dumps(manifest, ensure_ascii=False))
    return buf.getvalue()


@pytest.fixture
def small_project():
    """Two pages, Devanagari targets, one lexicon, one alignment matrix."""
    bundle = build_bundle(
        pages=[
            ("The bank rate rose. It fell.", "बैंक दर बढ़ी। वह गिरी।"),
            ("The bank rate is low.", "बैंक दर कम है।"),
        ],
        lexicons={"finance": "bank rate\tब्याज दर\tfinance\n"},
        matrices={
            # source: The bank rate rose . / target: बैंक दर बढ़ी ।
            "p1s1": "5 4\n0.1 0.0 0.0 0.0\n0.9 0.1 0.0 0.0\n0.0 0.9 0.0 0.0\n0.0 0.0 0.9 0.0\n0.0 0.0 0.0 0.9\n",
        },
    )
    return load_bundle(bundle)


@pytest.fixture
def five_page_project():
    """Five pages sharing vocabulary, for scope tests. Pages 2, 4 Edited."""
    from postedit.model import PageStatus

    pages = [
        ("One alpha line.", "एक सूचक रेखा।"),
        ("Two alpha lines.", "दो सूचक रेखा।"),
        ("Three beta lines.", "तीन सूचक बिंदु।"),
        ("Four beta lines.", "चार सूचक रेखा।"),
        ("Five gamma lines.", "पांच बिंदु रेखा।"),
    ]
    project = load_bundle(build_bundle(pages=pages, project_id="five"))
    project.page(2).status = PageStatus.EDITED
    project.page(4).status = PageStatus.EDITED
    return project
