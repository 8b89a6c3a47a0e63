"""SLP1 -> Devanagari transliteration against the published mapping."""

from __future__ import annotations

import unicodedata

import pytest
from hypothesis import given
from hypothesis import strategies as st

from postedit.errors import InvalidSLP1Character
from postedit.transliterate import (
    CONSONANTS,
    INDEPENDENT_VOWELS,
    MARKS,
    slp1_to_devanagari,
)

# Expected strings verified by hand against the SLP1 reference table.
REFERENCE = [
    # independent vowels
    ("a", "अ"),
    ("A", "आ"),
    ("i", "इ"),
    ("I", "ई"),
    ("u", "उ"),
    ("U", "ऊ"),
    ("f", "ऋ"),
    ("F", "ॠ"),
    ("x", "ऌ"),
    ("e", "ए"),
    ("E", "ऐ"),
    ("o", "ओ"),
    ("O", "औ"),
    # matras on क
    ("kA", "का"),
    ("ki", "कि"),
    ("kI", "की"),
    ("ku", "कु"),
    ("kU", "कू"),
    ("kf", "कृ"),
    ("ke", "के"),
    ("kE", "कै"),
    ("ko", "को"),
    ("kO", "कौ"),
    # virama: bare and in conjuncts
    ("k", "क्"),
    ("Darma", "धर्म"),
    ("cakra", "चक्र"),
    ("vfkza", "वृक्ष"),
    ("gacCati", "गच्छति"),
    ("yajYa", "यज्ञ"),
    ("gaNgA", "गङ्गा"),
    ("wIkA", "टीका"),
    # anusvara, visarga, candrabindu, avagraha
    ("saMskfta", "संस्कृत"),
    ("ahaM", "अहं"),
    ("namaH", "नमः"),
    ("duHKa", "दुःख"),
    ("hA~", "हाँ"),
    ("so'yam", "सोऽयम्"),
    # everyday words
    ("rAma", "राम"),
    ("yoga", "योग"),
    ("BagavadgItA", "भगवद्गीता"),
    ("kfzRa", "कृष्ण"),
    ("SAntiH", "शान्तिः"),
]


@pytest.mark.parametrize("slp1,expected", REFERENCE, ids=[r[0] for r in REFERENCE])
def test_reference_table(slp1, expected):
    assert slp1_to_devanagari(slp1) == expected


def test_empty():
    assert slp1_to_devanagari("") == ""


def test_whitespace_and_digits_pass_through():
    assert slp1_to_devanagari("rAma 108 gacCati") == "राम 108 गच्छति"


def test_multiword_final_viramas():
    assert slp1_to_devanagari("tat sat") == "तत् सत्"


def test_invalid_character_position():
    with pytest.raises(InvalidSLP1Character) as exc:
        slp1_to_devanagari("rAm;a")
    assert exc.value.position == 3
    assert exc.value.char == ";"


def test_invalid_character_latin_punct():
    with pytest.raises(InvalidSLP1Character):
        slp1_to_devanagari("rAma.")


_slp1_alphabet = sorted(
    set(INDEPENDENT_VOWELS) | set(CONSONANTS) | set(MARKS) | set(" 0123456789")
)


class TestProperties:
    @given(st.text(alphabet=st.sampled_from(_slp1_alphabet), max_size=30))
    def test_deterministic(self, text):
        assert slp1_to_devanagari(text) == slp1_to_devanagari(text)

    @given(st.text(alphabet=st.sampled_from(_slp1_alphabet), max_size=30))
    def test_output_is_devanagari_plus_passthrough(self, text):
        out = slp1_to_devanagari(text)
        for ch in out:
            if ch.isspace() or ch in "0123456789":
                continue
            assert 0x0900 <= ord(ch) <= 0x097F, f"{ch!r} outside Devanagari block"

    @given(st.text(alphabet=st.sampled_from(_slp1_alphabet), max_size=30))
    def test_output_is_nfc(self, text):
        out = slp1_to_devanagari(text)
        assert unicodedata.normalize("NFC", out) == out
