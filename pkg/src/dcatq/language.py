"""Character-trigram language detection for metadata literals.

Compares the trigram frequency vector of a text against bundled per-language
profiles (German and English) using cosine similarity. The confidence is the
winning squared similarity normalized over all profiles: a text resembling
both languages equally scores near 0.5, a clear match approaches 1.0.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

#: Texts shorter than this are not classified at all.
MIN_TEXT_LENGTH = 20

#: Number of trigrams kept in a stored profile.
PROFILE_SIZE = 800


@dataclass(frozen=True, slots=True)
class LanguageGuess:
    lang: str
    confidence: float

    def __post_init__(self):
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence out of range: {self.confidence}")


_NON_LETTERS = re.compile(r"[\W\d_]+", re.UNICODE)


def trigrams(text: str) -> Counter:
    """Trigram counts over the lowercased text, non-letters folded to spaces."""
    cleaned = _NON_LETTERS.sub(" ", text.lower()).strip()
    if not cleaned:
        return Counter()
    padded = f" {cleaned} "
    return Counter(padded[i : i + 3] for i in range(len(padded) - 2))


def build_profile(text: str, size: int = PROFILE_SIZE) -> list[tuple[str, int]]:
    """Most frequent trigrams of a corpus, ordered by count then token."""
    counts = trigrams(text)
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:size]


def write_profile(profile: Iterable[tuple[str, int]], path: Path) -> None:
    lines = [f"{token}\t{count}" for token, count in profile]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def parse_profile(text: str) -> Counter:
    counts: Counter = Counter()
    for line in text.splitlines():
        if not line.strip():
            continue
        token, _, count = line.rpartition("\t")
        counts[token] = int(count)
    return counts


class Detector:
    """Holds loaded language profiles; reusable across texts and threads."""

    def __init__(self, profiles: dict[str, Counter]):
        self.profiles = profiles
        self._norms = {
            lang: math.sqrt(sum(v * v for v in counts.values()))
            for lang, counts in profiles.items()
        }

    @classmethod
    def bundled(cls) -> "Detector":
        profiles = {}
        base = resources.files("dcatq").joinpath("data/profiles")
        for entry in base.iterdir():
            if entry.name.endswith(".profile"):
                profiles[entry.name[: -len(".profile")]] = parse_profile(
                    entry.read_text(encoding="utf-8")
                )
        return cls(profiles)

    def _cosine(self, vector: Counter, lang: str) -> float:
        profile = self.profiles[lang]
        norm_p = self._norms[lang]
        if not vector or norm_p == 0.0:
            return 0.0
        dot = sum(count * profile[token] for token, count in vector.items() if token in profile)
        norm_v = math.sqrt(sum(v * v for v in vector.values()))
        if norm_v == 0.0 or dot == 0.0:
            return 0.0
        return dot / (norm_v * norm_p)

    def detect(self, text: str) -> Optional[LanguageGuess]:
        if len(text) < MIN_TEXT_LENGTH:
            return None
        vector = trigrams(text)
        if not vector:
            return None
        similarities = {lang: self._cosine(vector, lang) for lang in self.profiles}
        total = sum(s * s for s in similarities.values())
        if total == 0.0:
            return None
        lang, best = sorted(similarities.items(), key=lambda kv: (-kv[1], kv[0]))[0]
        return LanguageGuess(lang, best * best / total)


_default_detector: Optional[Detector] = None


def default_detector() -> Detector:
    global _default_detector
    if _default_detector is None:
        _default_detector = Detector.bundled()
    return _default_detector


def detect_language(text: str) -> Optional[LanguageGuess]:
    """Best-guess language of a text against the bundled profiles."""
    return default_detector().detect(text)
