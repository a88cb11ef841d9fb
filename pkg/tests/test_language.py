import math
import re
from collections import Counter
from pathlib import Path

from dcatq.language import MIN_TEXT_LENGTH, Detector, default_detector, detect_language, parse_profile

PROFILE_DIR = Path(__file__).parent.parent / "src" / "dcatq" / "data" / "profiles"

GERMAN = "Der Datensatz enthält Informationen über Haltestellen im Stadtgebiet"
ENGLISH = "This dataset contains public transport stops"


# --- independent oracle: same trigram scheme, computed from the profile files ---


def oracle_trigrams(text: str) -> Counter:
    cleaned = re.sub(r"[\W\d_]+", " ", text.lower(), flags=re.UNICODE).strip()
    padded = f" {cleaned} "
    return Counter(padded[i : i + 3] for i in range(len(padded) - 2)) if cleaned else Counter()


def oracle_detect(text: str):
    profiles = {
        p.stem: parse_profile(p.read_text(encoding="utf-8"))
        for p in PROFILE_DIR.glob("*.profile")
    }
    v = oracle_trigrams(text)

    def cosine(profile):
        dot = sum(c * profile[t] for t, c in v.items() if t in profile)
        nv = math.sqrt(sum(c * c for c in v.values()))
        np_ = math.sqrt(sum(c * c for c in profile.values()))
        return dot / (nv * np_) if nv and np_ and dot else 0.0

    sims = {lang: cosine(profile) for lang, profile in profiles.items()}
    total = sum(s * s for s in sims.values())
    if total == 0:
        return None
    lang, best = sorted(sims.items(), key=lambda kv: (-kv[1], kv[0]))[0]
    return lang, best * best / total


def test_empty_text_not_classified():
    assert detect_language("") is None


def test_short_text_not_classified():
    assert detect_language("Bus stop") is None
    assert len("Bus stop") < MIN_TEXT_LENGTH


def test_german_sentence_detected_with_confidence():
    guess = detect_language(GERMAN)
    lang, confidence = oracle_detect(GERMAN)
    assert guess.lang == "de" == lang
    assert guess.confidence >= 0.75
    assert math.isclose(guess.confidence, confidence, rel_tol=1e-9)


def test_english_sentence_detected_with_confidence():
    guess = detect_language(ENGLISH)
    lang, confidence = oracle_detect(ENGLISH)
    assert guess.lang == "en" == lang
    assert guess.confidence >= 0.75
    assert math.isclose(guess.confidence, confidence, rel_tol=1e-9)


def test_non_letter_text_not_classified():
    assert detect_language("12345 67890 12345 67890") is None


def test_detector_matches_oracle_on_varied_texts():
    texts = [
        "Die Messwerte werden stündlich aktualisiert und archiviert",
        "Weekly air quality measurements for the northern districts",
        "Verzeichnis der öffentlichen Spielplätze mit Angaben zur Ausstattung",
        "A complete list of all public charging stations in the region",
    ]
    detector = default_detector()
    for text in texts:
        got = detector.detect(text)
        lang, confidence = oracle_detect(text)
        assert got.lang == lang
        assert math.isclose(got.confidence, confidence, rel_tol=1e-9)


def test_bundled_accuracy_on_labeled_sentences(data_dir):
    lines = (data_dir / "langid_sentences.tsv").read_text(encoding="utf-8").strip().splitlines()
    assert len(lines) == 200
    correct = 0
    for line in lines:
        label, text = line.split("\t", 1)
        guess = detect_language(text)
        if guess is not None and guess.lang == label:
            correct += 1
    assert correct / len(lines) >= 0.90
