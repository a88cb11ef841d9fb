"""Text measures for the comprehensibility metrics: readability and
lexicon-based spelling rate."""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources


class NotApplicable(Exception):
    """A metric's precondition does not hold for this record (e.g. no text)."""


_WORD = re.compile(r"[^\W\d_]+", re.UNICODE)
_SENTENCE_SPLIT = re.compile(r"[.!?]+")
_VOWELS = set("aeiouyäöüáéíóúàèìòù")


def _syllables(word: str) -> int:
    # maximal vowel groups; every word counts at least one syllable
    count = 0
    in_group = False
    for ch in word.lower():
        if ch in _VOWELS:
            if not in_group:
                count += 1
                in_group = True
        else:
            in_group = False
    return max(count, 1)


def flesch_reading_ease(text: str, lang: str = "de") -> float:
    """Flesch reading ease; the Amstad variant for German.

    en: 206.835 - 1.015*ASL - 84.6*ASW, de: 180 - ASL - 58.5*ASW with
    ASL = words/sentences and ASW = syllables/words. Raises
    :class:`NotApplicable` when the text has no words.
    """
    if lang not in ("de", "en"):
        raise ValueError(f"unsupported language: {lang}")
    words = _WORD.findall(text)
    if not words:
        raise NotApplicable("no words to rate")
    sentences = [s for s in _SENTENCE_SPLIT.split(text) if _WORD.search(s)]
    n_sentences = max(len(sentences), 1)
    asl = len(words) / n_sentences
    asw = sum(_syllables(w) for w in words) / len(words)
    if lang == "en":
        return 206.835 - 1.015 * asl - 84.6 * asw
    return 180.0 - asl - 58.5 * asw


@lru_cache(maxsize=None)
def word_list(lang: str) -> frozenset[str]:
    text = resources.files("dcatq").joinpath(f"data/wordlists/{lang}.txt").read_text(encoding="utf-8")
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


def known_token_ratio(text: str, lang: str) -> float:
    """Share of word tokens found in the bundled lexicon of the language.

    Raises :class:`NotApplicable` when the text has no word tokens or no
    lexicon is bundled for the language.
    """
    try:
        lexicon = word_list(lang)
    except FileNotFoundError:
        raise NotApplicable(f"no word list for language {lang!r}")
    tokens = [w.lower() for w in _WORD.findall(text)]
    if not tokens:
        raise NotApplicable("no tokens to check")
    known = sum(1 for t in tokens if t in lexicon)
    return known / len(tokens)
