"""Arabic orthographic normalization.

Every word that is stored, indexed or queried goes through ``normalize``
exactly once; all matching elsewhere in the package happens on normalized
forms. The rules, applied in order:

1. strip tatweel (kashida)
2. strip diacritics: harakat, tanwin, shadda, sukun, dagger alef and
   Quranic annotation marks
3. collapse alef variants (hamza above/below, madda, wasla) to bare alef
4. alef maqsura -> ya
5. taa marbuta -> ha

Normalization is idempotent: a normalized word passes through unchanged.
"""
from __future__ import annotations

import re

from .errors import EmptyAfterNormalization

# U+0610-061A honorific marks, U+064B-065F harakat/tanwin/shadda/sukun,
# U+0670 dagger alef, U+06D6-06ED Quranic annotation signs.
_DIACRITICS = re.compile(r"[ؐ-ًؚ-ٰٟۖ-ۭ]")
_TATWEEL = "ـ"

# A single word: non-empty, every code point inside the Arabic block.
_ARABIC_WORD = re.compile(r"\A[؀-ۿ]+\Z")

_LETTER_MAP = str.maketrans(
    {
        "أ": "ا",
        "إ": "ا",
        "آ": "ا",
        "ٱ": "ا",
        "ى": "ي",
        "ة": "ه",
    }
)


def is_arabic_word(text: str) -> bool:
    """True if ``text`` is one non-empty run of Arabic-block code points."""
    return bool(_ARABIC_WORD.match(text))


def strip_diacritics(text: str) -> str:
    """Remove tatweel and all diacritic marks, leaving base letters only."""
    return _DIACRITICS.sub("", text.replace(_TATWEEL, ""))


def normalize(word: str) -> str:
    """Normalize one Arabic word to its canonical matching form.

    >>> normalize("وَبَصُرَتْ")
    'وبصرت'
    >>> normalize("أكل")
    'اكل'

    Raises:
        ValueError: ``word`` is empty or contains non-Arabic code points.
        EmptyAfterNormalization: ``word`` consisted only of diacritics/tatweel.
    """
    if not is_arabic_word(word):
        raise ValueError(f"not a single Arabic word: {word!r}")
    stripped = strip_diacritics(word)
    if not stripped:
        raise EmptyAfterNormalization(word)
    return stripped.translate(_LETTER_MAP)


def is_normalized(word: str) -> bool:
    """True if ``word`` is already in canonical form."""
    return is_arabic_word(word) and normalize(word) == word
