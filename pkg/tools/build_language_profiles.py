#!/usr/bin/env python3
"""Regenerate the bundled language profiles from the corpora in this folder.

Run from the repository root:

    python tools/build_language_profiles.py
"""

from pathlib import Path

from dcatq.language import build_profile, write_profile

HERE = Path(__file__).parent
TARGET = HERE.parent / "src" / "dcatq" / "data" / "profiles"


def main() -> None:
    TARGET.mkdir(parents=True, exist_ok=True)
    for lang in ("de", "en"):
        corpus = (HERE / f"corpus_{lang}.txt").read_text(encoding="utf-8")
        profile = build_profile(corpus)
        write_profile(profile, TARGET / f"{lang}.profile")
        print(f"{lang}: {len(profile)} trigrams")


if __name__ == "__main__":
    main()
