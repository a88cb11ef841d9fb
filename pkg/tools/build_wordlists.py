#!/usr/bin/env python3
"""Regenerate the bundled word lists used by the language-correctness metric.

Words come from the corpora in this folder plus a hand-maintained stock of
common function words. Run from the repository root:

    python tools/build_wordlists.py
"""

import re
from pathlib import Path

HERE = Path(__file__).parent
TARGET = HERE.parent / "src" / "dcatq" / "data" / "wordlists"

WORD = re.compile(r"[^\W\d_]+", re.UNICODE)

EXTRA_DE = """
ich du er sie es wir ihr man sich mein dein sein unser euer kein eine einer eines einem einen
und oder aber doch denn weil dass wenn als wie wo wer was wann warum welche welcher welches
nicht auch noch schon nur sehr mehr weniger viel viele wenig wenige alle alles jeder jede jedes
haben hat hatte hatten habe hast werden wird wurde wurden worden sein ist sind war waren bin bist
können kann konnte müssen muss musste sollen soll sollte wollen will wollte dürfen darf mögen mag
machen macht machte gehen geht ging kommen kommt kam sehen sieht sah geben gibt gab nehmen nimmt
finden findet fand stehen steht stand liegen liegt lag bleiben bleibt blieb halten hält hielt
lassen lässt ließ bringen bringt brachte denken denkt dachte wissen weiß wusste sagen sagt sagte
an auf aus bei bis durch für gegen hinter in mit nach neben ohne seit über um unter von vor zu
zwischen zum zur vom beim ins ans aufs hier dort da dann jetzt heute morgen gestern immer nie oft
selten bald später früher gut besser beste schlecht groß größer klein kleiner neu alt jung lang
kurz hoch tief breit schmal schnell langsam früh spät erste zweite dritte letzte nächste
jahr jahre monat monate woche wochen tag tage stunde stunden minute minuten uhr zeit zeiten
daten datensatz datensätze metadaten lizenz lizenzen format formate datei dateien tabelle
kategorie kategorien schlagwort schlagwörter titel beschreibung herausgeber katalog portal
karte karten stadt städte gemeinde gemeinden land länder region regionen ort orte straße straßen
anwendung anwendungen beispiel beispiele information informationen nutzung qualität suche
verkehr fahrplan fahrpläne haltestelle haltestellen linie linien bus bahn zug züge fahrrad auto
wetter temperatur niederschlag messung messungen sensor sensoren wert werte anzahl nummer
"""

EXTRA_EN = """
i you he she it we they me him her us them my your his its our their mine yours a an the this
that these those and or but if because when while as than then so not no nor also too very more
most less least much many few all any some each every either neither both few little own same
be am is are was were been being have has had having do does did doing will would shall should
can could may might must need used to of in on at by for with about against between into through
during before after above below from up down out off over under again further once here there
where why how what which who whom whose when all both more other such only just even still yet
make makes made get gets got go goes went see sees saw know knows knew take takes took come
comes came think thinks thought look looks looked want wanted give gives gave use uses used
find finds found tell tells told ask asks asked work works worked seem seems seemed feel feels
felt try tries tried leave leaves left call calls called good better best bad worse worst new
old young long short high low big small large great next last first second third early late
year years month months week weeks day days hour hours minute minutes time times
data dataset datasets metadata licence license licenses format formats file files table tables
category categories keyword keywords title description publisher catalog catalogue portal
map maps city cities municipality municipalities country countries region regions place places
application applications example examples information usage quality search street streets
transport timetable timetables stop stops line lines bus train trains bicycle car cars
weather temperature rainfall measurement measurements sensor sensors value values number count
"""


def words_from(text: str) -> set[str]:
    return {w.lower() for w in WORD.findall(text) if len(w) > 1 or w.lower() in {"a", "i"}}


def main() -> None:
    TARGET.mkdir(parents=True, exist_ok=True)
    for lang, extra in (("de", EXTRA_DE), ("en", EXTRA_EN)):
        corpus = (HERE / f"corpus_{lang}.txt").read_text(encoding="utf-8")
        vocabulary = sorted(words_from(corpus) | words_from(extra))
        (TARGET / f"{lang}.txt").write_text("\n".join(vocabulary) + "\n", encoding="utf-8")
        print(f"{lang}: {len(vocabulary)} words")


if __name__ == "__main__":
    main()
