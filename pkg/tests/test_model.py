"""Document model: segment edits, status lifecycle, sentence links."""

from __future__ import annotations

import random

import pytest

from postedit.errors import IllegalTransition, UnknownPage, UnknownSegment
from postedit.model import (
    Page,
    PageStatus,
    Project,
    Role,
    Segment,
    sentence_links,
    set_segment_text,
    transition_status,
)
from postedit.tokenizer import tokenize


def make_project() -> Project:
    page = Page(index=1)
    page.source_segments = [Segment.create("p1s1", "The bank rate.")]
    page.target_segments = [Segment.create("p1t1", "बैंक दर।", origin_id="p1s1")]
    page.baselines = {"p1t1": "बैंक दर।"}
    return Project(id="t", name="T", source_lang="en", target_lang="hi", pages=[page])


class TestSetSegmentText:
    def test_identity_edit_bumps_version_with_empty_diff(self):
        project = make_project()
        before = project.version
        set_segment_text(project, 1, "p1t1", "बैंक दर।", "alice")
        assert project.version == before + 1
        rec = project.edit_history[-1]
        assert rec.old_text == rec.new_text == "बैंक दर।"

    def test_tokens_recomputed(self):
        project = make_project()
        set_segment_text(project, 1, "p1t1", "ब्याज दर", "alice")
        seg = project.page(1).find_segment("p1t1")
        assert [t.surface for t in seg.tokens] == ["ब्याज", "दर"]

    def test_unknown_segment(self):
        project = make_project()
        with pytest.raises(UnknownSegment):
            set_segment_text(project, 1, "zzz", "x", "alice")

    def test_unknown_page(self):
        project = make_project()
        with pytest.raises(UnknownPage):
            set_segment_text(project, 9, "p1t1", "x", "alice")

    def test_text_is_nfc_normalized(self):
        project = make_project()
        decomposed = "bát"  # a + combining acute
        set_segment_text(project, 1, "p1t1", decomposed, "alice")
        seg = project.page(1).find_segment("p1t1")
        assert seg.text == "bát"

    def test_highlights_dropped_on_change_kept_on_identity(self):
        from postedit.model import Highlight, Provenance

        project = make_project()
        seg = project.page(1).find_segment("p1t1")
        seg.highlights = [Highlight(0, 4, Provenance.GLOBAL, "r1")]
        set_segment_text(project, 1, "p1t1", seg.text, "alice")
        assert len(seg.highlights) == 1
        set_segment_text(project, 1, "p1t1", "नई पंक्ति", "alice")
        assert seg.highlights == []

    def test_retokenization_matches_cached_tokens(self):
        project = make_project()
        set_segment_text(project, 1, "p1t1", "एक दो। तीन", "alice")
        seg = project.page(1).find_segment("p1t1")
        assert tokenize(seg.text) == seg.tokens


class TestStatusLifecycle:
    def test_corrector_moves_unedited_to_edited(self):
        project = make_project()
        transition_status(project, 1, Role.CORRECTOR)
        assert project.page(1).status is PageStatus.EDITED

    def test_verifier_cannot_touch_unedited(self):
        project = make_project()
        with pytest.raises(IllegalTransition):
            transition_status(project, 1, Role.VERIFIER)

    def test_verifier_moves_edited_to_verified(self):
        project = make_project()
        project.page(1).status = PageStatus.EDITED
        transition_status(project, 1, Role.VERIFIER)
        assert project.page(1).status is PageStatus.VERIFIED

    def test_corrector_cannot_reedit_edited(self):
        project = make_project()
        project.page(1).status = PageStatus.EDITED
        with pytest.raises(IllegalTransition):
            transition_status(project, 1, Role.CORRECTOR)

    def test_proofread_requires_full_ladder(self):
        # no role sequence reaches Proofread without Edited and Verified
        for first in (Role.VERIFIER, Role.PROOFREADER):
            project = make_project()
            with pytest.raises(IllegalTransition):
                transition_status(project, 1, first)
        project = make_project()
        for role in (Role.CORRECTOR, Role.VERIFIER, Role.PROOFREADER):
            transition_status(project, 1, role)
        assert project.page(1).status is PageStatus.PROOFREAD

    def test_exhaustive_role_status_grid(self):
        allowed = {
            (PageStatus.UNEDITED, Role.CORRECTOR): PageStatus.EDITED,
            (PageStatus.EDITED, Role.VERIFIER): PageStatus.VERIFIED,
            (PageStatus.VERIFIED, Role.PROOFREADER): PageStatus.PROOFREAD,
        }
        for status in PageStatus:
            for role in Role:
                project = make_project()
                project.page(1).status = status
                if (status, role) in allowed:
                    transition_status(project, 1, role)
                    assert project.page(1).status is allowed[(status, role)]
                else:
                    with pytest.raises(IllegalTransition):
                        transition_status(project, 1, role)


class TestSentenceLinks:
    def test_reads_off_origins_in_target_order(self):
        page = Page(index=1)
        page.source_segments = [Segment.create("s1", "a"), Segment.create("s2", "b")]
        page.target_segments = [
            Segment.create("t1", "x", origin_id="s1"),
            Segment.create("t2", "y", origin_id="s2"),
        ]
        assert sentence_links(page) == [("s1", "t1"), ("s2", "t2")]

    def test_absent_origin_excluded(self):
        page = Page(index=1)
        page.source_segments = [Segment.create("s1", "a")]
        page.target_segments = [
            Segment.create("t1", "x", origin_id="s1"),
            Segment.create("t3", "inserted"),
        ]
        assert sentence_links(page) == [("s1", "t1")]

    def test_empty_page(self):
        assert sentence_links(Page(index=1)) == []

    def test_target_ids_unique_in_links(self, five_page_project):
        for page in five_page_project.pages:
            links = sentence_links(page)
            targets = [t for _, t in links]
            assert len(targets) == len(set(targets))


class TestRandomEditScripts:
    def test_id_uniqueness_and_version_monotonicity(self, five_page_project):
        from postedit import editing
        from postedit.editing import ReplacementScope

        project = five_page_project
        rng = random.Random(20240811)
        words = ["एक", "दो", "तीन", "रेखा", "सूचक", "नया", "पुराना"]
        versions = [project.version]
        for _ in range(60):
            action = rng.choice(["edit", "apply", "save", "status"])
            page = rng.choice(project.pages)
            if action == "edit" and page.target_segments:
                seg = rng.choice(page.target_segments)
                text = " ".join(rng.choice(words) for _ in range(rng.randint(1, 6)))
                set_segment_text(project, page.index, seg.id, text + "।", "bot")
            elif action == "apply":
                rule = editing.make_rule([rng.choice(words)], rng.choice(words))
                editing.apply(
                    [rule], ReplacementScope.ALL_PAGES, project, page.index, "bot"
                )
            elif action == "save":
                editing.save_page(project, page.index, "bot")
            else:
                try:
                    transition_status(project, page.index, rng.choice(list(Role)))
                except IllegalTransition:
                    continue  # no version bump on failure
            versions.append(project.version)
            ids = project.all_segment_ids()
            assert len(ids) == len(set(ids))
        assert all(b > a for a, b in zip(versions, versions[1:]))
