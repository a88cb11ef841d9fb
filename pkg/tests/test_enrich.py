import pytest

from dcatq.dcat import DatasetRecord, GeoAnnotation, GeoLevel
from dcatq.enrich import (
    Gazetteer,
    GazetteerEntry,
    GazetteerError,
    annotate_places,
    load_gazetteer,
    refine_language_tags,
)
from dcatq.rdf import Iri

from .conftest import iri


class StubDetector:
    """Fixed-outcome detector for threshold tests."""

    def __init__(self, lang="de", confidence=0.5):
        self.lang = lang
        self.confidence = confidence

    def detect(self, text):
        from dcatq.language import LanguageGuess

        if len(text) < 20:
            return None
        return LanguageGuess(self.lang, self.confidence)


GERMAN_DESC = "Der Datensatz enthält Informationen über Haltestellen im Stadtgebiet"


def test_untagged_german_description_gets_tag():
    record = DatasetRecord(iri=iri("d"), descriptions=((None, GERMAN_DESC),))
    refined = refine_language_tags(record, threshold=0.75)
    assert refined.descriptions == (("de", GERMAN_DESC),)


def test_tagged_literals_never_changed():
    record = DatasetRecord(iri=iri("d"), descriptions=(("en", GERMAN_DESC),))
    refined = refine_language_tags(record, threshold=0.1)
    assert refined.descriptions == (("en", GERMAN_DESC),)


def test_below_threshold_stays_untagged():
    record = DatasetRecord(iri=iri("d"), descriptions=((None, GERMAN_DESC),))
    refined = refine_language_tags(record, threshold=0.75, detector=StubDetector(confidence=0.5))
    assert refined.descriptions == ((None, GERMAN_DESC),)


def test_keywords_left_alone():
    record = DatasetRecord(iri=iri("d"), keywords=((None, GERMAN_DESC),))
    refined = refine_language_tags(record, threshold=0.75)
    assert refined.keywords == ((None, GERMAN_DESC),)


def test_refine_is_idempotent():
    record = DatasetRecord(
        iri=iri("d"),
        titles=((None, "Haltestellen und Fahrpläne im Stadtgebiet"),),
        descriptions=((None, GERMAN_DESC), ("en", "already tagged")),
    )
    once = refine_language_tags(record)
    twice = refine_language_tags(once)
    assert once == twice


def test_invalid_threshold_rejected():
    record = DatasetRecord(iri=iri("d"))
    with pytest.raises(ValueError):
        refine_language_tags(record, threshold=0.0)
    with pytest.raises(ValueError):
        refine_language_tags(record, threshold=1.5)


# --- gazetteer ----------------------------------------------------------------


def entry(id_, name, level, parent=None, centroid=(50.0, 8.0), population=None):
    return GazetteerEntry(id=id_, name=name, level=level, parent=parent, centroid=centroid, population=population)


def small_gazetteer():
    return Gazetteer(
        [
            entry("DE", "Deutschland", GeoLevel.NUTS0),
            entry("DEA", "Nordrhein-Westfalen", GeoLevel.NUTS1, parent="DE"),
            entry("pb", "Paderborn", GeoLevel.LAU, parent="DEA", centroid=(51.72, 8.75), population=150580),
            entry("ffm", "Frankfurt am Main", GeoLevel.LAU, parent="DE", centroid=(50.11, 8.68), population=753056),
            entry("ff1", "Frankfurt", GeoLevel.LAU, parent="DE", centroid=(50.11, 8.68), population=753056),
            entry("ff2", "Frankfurt", GeoLevel.LAU, parent="DE", centroid=(52.34, 14.55), population=57873),
        ]
    )


def test_duplicate_ids_rejected():
    with pytest.raises(GazetteerError):
        Gazetteer([entry("x", "A", GeoLevel.LAU), entry("x", "B", GeoLevel.LAU)])


def test_missing_parent_rejected():
    with pytest.raises(GazetteerError):
        Gazetteer([entry("x", "A", GeoLevel.LAU, parent="nope")])


def test_parent_must_be_higher_level():
    with pytest.raises(GazetteerError):
        Gazetteer(
            [
                entry("a", "A", GeoLevel.LAU),
                entry("b", "B", GeoLevel.NUTS1, parent="a"),
            ]
        )


def test_annotation_for_mentioned_place():
    gaz = small_gazetteer()
    record = DatasetRecord(
        iri=iri("d"),
        descriptions=((None, "Haltestellen der Stadt Paderborn im Überblick"),),
    )
    annotated = annotate_places(record, gaz)
    assert len(annotated.spatial) == 1
    a = annotated.spatial[0]
    assert a.place_name == "Paderborn"
    assert a.centroid == (51.72, 8.75)
    assert a.level == GeoLevel.LAU
    assert a.place_iri == Iri("https://w3id.org/dcatq/place/pb")


def test_no_match_leaves_record_unchanged():
    gaz = small_gazetteer()
    record = DatasetRecord(iri=iri("d"), descriptions=((None, "Nichts zu finden hier"),))
    assert annotate_places(record, gaz) == record


def test_same_name_resolved_by_population():
    gaz = small_gazetteer()
    record = DatasetRecord(iri=iri("d"), titles=((None, "Stadtplan Frankfurt"),))
    annotated = annotate_places(record, gaz)
    assert len(annotated.spatial) == 1
    assert annotated.spatial[0].place_iri == Iri("https://w3id.org/dcatq/place/ff1")


def test_longest_match_wins():
    gaz = small_gazetteer()
    record = DatasetRecord(iri=iri("d"), titles=((None, "Luftdaten Frankfurt am Main 2020"),))
    annotated = annotate_places(record, gaz)
    assert len(annotated.spatial) == 1
    assert annotated.spatial[0].place_iri == Iri("https://w3id.org/dcatq/place/ffm")


def test_word_boundaries_respected():
    gaz = small_gazetteer()
    # "Paderborner" must not match the entry "Paderborn"
    record = DatasetRecord(iri=iri("d"), titles=((None, "Paderborner Umland"),))
    assert annotate_places(record, gaz) == record


def test_case_insensitive_matching():
    gaz = small_gazetteer()
    record = DatasetRecord(iri=iri("d"), keywords=((None, "PADERBORN"),))
    annotated = annotate_places(record, gaz)
    assert len(annotated.spatial) == 1


def test_annotate_is_idempotent_and_subset_of_gazetteer():
    gaz = small_gazetteer()
    record = DatasetRecord(
        iri=iri("d"),
        titles=((None, "Paderborn und Frankfurt am Main im Vergleich"),),
        descriptions=((None, "Paderborn hat weniger Einwohner als Frankfurt am Main."),),
    )
    once = annotate_places(record, gaz)
    twice = annotate_places(once, gaz)
    assert once == twice
    valid_iris = {f"https://w3id.org/dcatq/place/{e.id}" for e in gaz.entries}
    assert all(a.place_iri.value in valid_iris for a in once.spatial)
    assert len(once.spatial) == 2


def test_existing_annotations_are_kept():
    gaz = small_gazetteer()
    manual = GeoAnnotation(place_name="Somewhere", level=GeoLevel.POINT, centroid=(1.0, 2.0))
    record = DatasetRecord(iri=iri("d"), titles=((None, "Paderborn"),), spatial=(manual,))
    annotated = annotate_places(record, gaz)
    assert manual in annotated.spatial
    assert len(annotated.spatial) == 2


# --- bundled gazetteer ----------------------------------------------------------


def test_bundled_gazetteer_loads_and_validates():
    gaz = load_gazetteer()
    assert len(gaz) >= 180
    assert gaz.by_id["DE"].level == GeoLevel.NUTS0
    assert len([e for e in gaz.entries if e.level == GeoLevel.NUTS1]) == 16


def test_bundled_paderborn_resolution_prefers_district():
    # two entries share the name: the NUTS3 district outranks the city
    gaz = load_gazetteer()
    record = DatasetRecord(iri=iri("d"), descriptions=((None, "Radwege im Raum Paderborn"),))
    annotated = annotate_places(record, gaz)
    assert len(annotated.spatial) == 1
    a = annotated.spatial[0]
    assert a.level == GeoLevel.NUTS3
    assert a.centroid == (51.68, 8.71)
