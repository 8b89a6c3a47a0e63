"""Lexicon loading, longest-match lookup, suggestions, application."""

from __future__ import annotations

import random

import pytest

from postedit.align import AlignmentLinkSet
from postedit.errors import EmptyLexicon, MalformedLine, StaleSuggestion
from postedit.lexicon import (
    apply_suggestion,
    find_matches,
    load_lexicon,
    parse_lexicon,
    suggest,
)
from postedit.model import Page, Project, Provenance, Segment
from postedit.tokenizer import tokenize


def links(pairs) -> AlignmentLinkSet:
    return AlignmentLinkSet(frozenset(pairs))


class TestParseLexicon:
    def test_basic_entry(self):
        lex = parse_lexicon("bank rate\tब्याज दर\tfinance\n", "fin")
        assert len(lex.entries) == 1
        entry = lex.entries[0]
        assert entry.source_term == ("bank", "rate")
        assert entry.target_terms == ["ब्याज दर"]
        assert entry.domain == "finance"

    def test_alternatives(self):
        lex = parse_lexicon("force\tबल|शक्ति\n", "phy")
        assert lex.entries[0].target_terms == ["बल", "शक्ति"]

    def test_malformed_line_number(self):
        with pytest.raises(MalformedLine) as exc:
            parse_lexicon("good\tठीक\nonlyonecolumn\n", "x")
        assert exc.value.line_no == 2

    def test_comments_and_blanks_skipped(self):
        lex = parse_lexicon("# header\n\nbank\tबैंक\n", "x")
        assert len(lex.entries) == 1

    def test_duplicate_pairs_deduplicated(self):
        lex = parse_lexicon("bank\tबैंक\nbank\tबैंक\nbank\tकिनारा\n", "x")
        assert len(lex.entries) == 1
        assert lex.entries[0].target_terms == ["बैंक", "किनारा"]

    def test_empty_lexicon(self):
        with pytest.raises(EmptyLexicon):
            parse_lexicon("# only comments\n", "x")

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "fin.tsv"
        path.write_text("bank\tबैंक\n", encoding="utf-8")
        lex = load_lexicon(path, "en", "hi")
        assert lex.name == "fin"
        assert lex.source_lang == "en"

    def test_index_longest_first(self):
        lex = parse_lexicon("bank\tबैंक\nbank rate\tब्याज दर\n", "x")
        bucket = lex.index["bank"]
        assert [len(e.source_term) for e in bucket] == [2, 1]


class TestFindMatches:
    def lex(self, *lines):
        return parse_lexicon("\n".join(lines) + "\n", "t")

    def test_longest_match_wins(self):
        lex = self.lex("bank\tबैंक", "bank rate\tब्याज दर")
        toks = tokenize("the bank rate")
        assert [(rng, e.source_term) for rng, e in find_matches(toks, lex)] == [
            ((1, 3), ("bank", "rate"))
        ]

    def test_empty_tokens(self):
        assert find_matches([], self.lex("bank\tबैंक")) == []

    def test_case_fold(self):
        matches = find_matches(tokenize("Bank"), self.lex("bank\tबैंक"))
        assert len(matches) == 1

    def test_scan_resumes_after_match(self):
        lex = self.lex("a a\tx")
        matches = find_matches(tokenize("a a a"), lex)
        assert [rng for rng, _ in matches] == [(0, 2)]

    def test_matches_disjoint_and_sorted(self):
        rng = random.Random(99)
        lex = self.lex("a b\tx", "b c\ty", "c\tz", "a\tw")
        for _ in range(200):
            toks = tokenize(" ".join(rng.choice("abcd") for _ in range(12)))
            matches = find_matches(toks, lex)
            spans = [r for r, _ in matches]
            assert spans == sorted(spans)
            for (s1, e1), (s2, e2) in zip(spans, spans[1:]):
                assert e1 <= s2

    def test_longest_dominance_property(self):
        # wherever both could match, the longer entry is reported
        lex = self.lex("x y\tlong", "x\tshort")
        matches = find_matches(tokenize("x y x"), lex)
        assert [(r, e.target_terms[0]) for r, e in matches] == [
            ((0, 2), "long"),
            ((2, 3), "short"),
        ]


def make_pair(source_text: str, target_text: str):
    src = Segment.create("s1", source_text)
    tgt = Segment.create("t1", target_text)
    return src, tgt


class TestSuggest:
    def lex(self, *lines):
        return parse_lexicon("\n".join(lines) + "\n", "t")

    def test_basic_projection(self):
        src, tgt = make_pair("bank rate", "बैंक दर")
        lex = self.lex("bank rate\tब्याज दर")
        got = suggest(src, tgt, links({(0, 0), (1, 1)}), lex)
        assert len(got) == 1
        s = got[0]
        assert s.current_text == "बैंक दर"
        assert s.proposed_text == "ब्याज दर"
        assert s.target_span == (0, 7)

    def test_already_satisfied_skipped(self):
        src, tgt = make_pair("bank rate", "ब्याज दर")
        lex = self.lex("bank rate\tब्याज दर")
        assert suggest(src, tgt, links({(0, 0), (1, 1)}), lex) == []

    def test_no_links_no_suggestion(self):
        src, tgt = make_pair("bank rate", "बैंक दर")
        lex = self.lex("bank rate\tब्याज दर")
        assert suggest(src, tgt, links(set()), lex) == []

    def test_satisfied_by_alternative_skipped(self):
        src, tgt = make_pair("force", "शक्ति")
        lex = self.lex("force\tबल|शक्ति")
        assert suggest(src, tgt, links({(0, 0)}), lex) == []

    def test_latin_satisfaction_is_case_folded(self):
        src, tgt = make_pair("bank", "BANK")
        lex = self.lex("bank\tbank")
        assert suggest(src, tgt, links({(0, 0)}), lex) == []

    def test_never_proposes_satisfying_text_randomized(self):
        rng = random.Random(4242)
        words_src = ["alpha", "beta", "gamma", "delta"]
        words_tgt = ["एक", "दो", "तीन", "चार"]
        for _ in range(200):
            n = rng.randint(1, 4)
            src_text = " ".join(rng.choice(words_src) for _ in range(n))
            tgt_text = " ".join(rng.choice(words_tgt) for _ in range(n))
            src, tgt = make_pair(src_text, tgt_text)
            lines = [
                f"{rng.choice(words_src)}\t{rng.choice(words_tgt)}|{rng.choice(words_tgt)}"
                for _ in range(3)
            ]
            lex = parse_lexicon("\n".join(lines) + "\n", "r")
            pair_links = links({(i, i) for i in range(n)})
            for s in suggest(src, tgt, pair_links, lex):
                assert s.current_text.strip() not in [
                    t.strip() for t in s.entry.target_terms
                ]


def project_with(target_text: str) -> Project:
    page = Page(index=1)
    page.source_segments = [Segment.create("p1s1", "bank rate")]
    page.target_segments = [Segment.create("p1t1", target_text, origin_id="p1s1")]
    page.baselines = {"p1t1": target_text}
    return Project(id="p", name="P", source_lang="en", target_lang="hi", pages=[page])


class TestApplySuggestion:
    def make_suggestion(self, project) -> object:
        src = project.pages[0].source_segments[0]
        tgt = project.pages[0].target_segments[0]
        lex = parse_lexicon("bank rate\tब्याज दर\n", "fin")
        return suggest(src, tgt, links({(0, 0), (1, 1)}), lex)[0]

    def test_apply_adds_green_highlight(self):
        project = project_with("बैंक दर")
        s = self.make_suggestion(project)
        apply_suggestion(project, s, "alice")
        seg = project.pages[0].target_segments[0]
        assert seg.text == "ब्याज दर"
        assert len(seg.highlights) == 1
        h = seg.highlights[0]
        assert h.provenance is Provenance.DICTIONARY
        assert seg.text[h.start : h.end] == "ब्याज दर"

    def test_stale_after_edit(self):
        from postedit.model import set_segment_text

        project = project_with("बैंक दर")
        s = self.make_suggestion(project)
        set_segment_text(project, 1, "p1t1", "कुछ और", "bob")
        version = project.version
        with pytest.raises(StaleSuggestion):
            apply_suggestion(project, s, "alice")
        assert project.version == version  # atomic: nothing changed
        assert project.pages[0].target_segments[0].text == "कुछ और"

    def test_double_apply_is_stale(self):
        project = project_with("बैंक दर")
        s = self.make_suggestion(project)
        apply_suggestion(project, s, "alice")
        with pytest.raises(StaleSuggestion):
            apply_suggestion(project, s, "alice")

    def test_edit_record_kind(self):
        from postedit.model import EditKind

        project = project_with("बैंक दर")
        apply_suggestion(project, self.make_suggestion(project), "alice")
        assert project.edit_history[-1].kind is EditKind.DICTIONARY
