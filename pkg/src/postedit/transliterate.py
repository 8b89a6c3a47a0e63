"""SLP1 to Devanagari transliteration.

SLP1 encodes exactly one phoneme per ASCII character, so the scanner is a
single left-to-right pass with one pending-consonant slot: a consonant
followed by a vowel renders as consonant plus dependent vowel sign (the
inherent 'a' renders no sign), while a consonant followed by another
consonant or end of word receives an explicit virama. Vowels with no
pending consonant render in their independent form. Whitespace and ASCII
digits pass through unchanged; anything else raises
:class:`~postedit.errors.InvalidSLP1Character`.
"""

from __future__ import annotations

from .errors import InvalidSLP1Character

VIRAMA = "्"

INDEPENDENT_VOWELS = {
    "a": "अ",  # अ
    "A": "आ",  # आ
    "i": "इ",  # इ
    "I": "ई",  # ई
    "u": "उ",  # उ
    "U": "ऊ",  # ऊ
    "f": "ऋ",  # ऋ
    "F": "ॠ",  # ॠ
    "x": "ऌ",  # ऌ
    "X": "ॡ",  # ॡ
    "e": "ए",  # ए
    "E": "ऐ",  # ऐ
    "o": "ओ",  # ओ
    "O": "औ",  # औ
}

VOWEL_SIGNS = {
    "a": "",  # inherent vowel: no sign
    "A": "ा",
    "i": "ि",
    "I": "ी",
    "u": "ु",
    "U": "ू",
    "f": "ृ",
    "F": "ॄ",
    "x": "ॢ",
    "X": "ॣ",
    "e": "े",
    "E": "ै",
    "o": "ो",
    "O": "ौ",
}

CONSONANTS = {
    "k": "क",  # क
    "K": "ख",  # ख
    "g": "ग",  # ग
    "G": "घ",  # घ
    "N": "ङ",  # ङ
    "c": "च",  # च
    "C": "छ",  # छ
    "j": "ज",  # ज
    "J": "झ",  # झ
    "Y": "ञ",  # ञ
    "w": "ट",  # ट
    "W": "ठ",  # ठ
    "q": "ड",  # ड
    "Q": "ढ",  # ढ
    "R": "ण",  # ण
    "t": "त",  # त
    "T": "थ",  # थ
    "d": "द",  # द
    "D": "ध",  # ध
    "n": "न",  # न
    "p": "प",  # प
    "P": "फ",  # फ
    "b": "ब",  # ब
    "B": "भ",  # भ
    "m": "म",  # म
    "y": "य",  # य
    "r": "र",  # र
    "l": "ल",  # ल
    "v": "व",  # व
    "S": "श",  # श
    "z": "ष",  # ष
    "s": "स",  # स
    "h": "ह",  # ह
    "L": "ळ",  # ळ
}

# Anusvara, visarga, candrabindu, avagraha attach to the finished syllable.
MARKS = {
    "M": "ं",
    "H": "ः",
    "~": "ँ",
    "'": "ऽ",
}


def slp1_to_devanagari(text: str) -> str:
    """Transliterate an SLP1 string to Devanagari.

    Word-final consonants carry an explicit virama so the rendering is
    lossless. Raises :class:`InvalidSLP1Character` (with the 0-based
    position) for any character outside the SLP1 set, whitespace, and
    digits excepted.
    """
    out: list[str] = []
    pending: str | None = None  # Devanagari consonant awaiting its vowel

    def flush() -> None:
        nonlocal pending
        if pending is not None:
            out.append(pending + VIRAMA)
            pending = None

    for pos, ch in enumerate(text):
        if ch in CONSONANTS:
            flush()
            pending = CONSONANTS[ch]
        elif ch in VOWEL_SIGNS:
            if pending is not None:
                out.append(pending + VOWEL_SIGNS[ch])
                pending = None
            else:
                out.append(INDEPENDENT_VOWELS[ch])
        elif ch in MARKS:
            flush()
            out.append(MARKS[ch])
        elif ch.isspace() or ch in "0123456789":
            flush()
            out.append(ch)
        else:
            raise InvalidSLP1Character(ch, pos)
    flush()
    return "".join(out)
