"""Attribute-based license modeling and compatibility checking.

The combination algebra: a composite of several licensed datasets keeps the
intersection of the permissions, the union of the duties and the union of
the prohibitions. Share-alike duties "pin" the result to the license that
carries them, which is why two distinct share-alike licenses can never be
combined, and why a pinned combination fails when a prohibition contributed
by another input takes away a permission the pinned license grants.

The bundled attribute table is a coarse working model (documented in the
data file), not legal advice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from .rdf import Iri

PERMISSIONS = frozenset({"commercial_use", "modification", "distribution", "sublicensing"})
DUTIES = frozenset({"attribution", "share_alike", "notice_preservation"})
PROHIBITIONS = frozenset({"commercial_use", "modification"})

SHARE_ALIKE_CLASH = "share_alike_clash"
PERMISSION_PROHIBITION_CLASH = "permission_prohibition_clash"
UNKNOWN_LICENSE = "unknown_license"


@dataclass(frozen=True, slots=True)
class LicenseSpec:
    id: Iri
    name: str
    permissions: frozenset[str] = frozenset()
    duties: frozenset[str] = frozenset()
    prohibitions: frozenset[str] = frozenset()
    open: bool = False
    known: bool = True

    def __post_init__(self):
        if not self.permissions <= PERMISSIONS:
            raise ValueError(f"{self.id.value}: unknown permissions {self.permissions - PERMISSIONS}")
        if not self.duties <= DUTIES:
            raise ValueError(f"{self.id.value}: unknown duties {self.duties - DUTIES}")
        if not self.prohibitions <= PROHIBITIONS:
            raise ValueError(f"{self.id.value}: unknown prohibitions {self.prohibitions - PROHIBITIONS}")
        if self.permissions & self.prohibitions:
            raise ValueError(
                f"{self.id.value}: attributes both permitted and prohibited: "
                f"{sorted(self.permissions & self.prohibitions)}"
            )

    @property
    def share_alike(self) -> bool:
        return "share_alike" in self.duties


def unknown_license(iri: Iri) -> LicenseSpec:
    """Placeholder spec for a license IRI absent from the database."""
    return LicenseSpec(id=iri, name=iri.value, known=False)


@dataclass(frozen=True, slots=True)
class CompositeTerms:
    permissions: frozenset[str]
    duties: frozenset[str]
    prohibitions: frozenset[str]
    share_alike_pins: frozenset[Iri]


@dataclass(frozen=True, slots=True)
class Conflict:
    kind: str
    details: str


@dataclass(frozen=True, slots=True)
class Verdict:
    compatible: bool
    conflicts: tuple[Conflict, ...] = ()

    def __post_init__(self):
        if self.compatible != (len(self.conflicts) == 0):
            raise ValueError("compatible flag must mirror empty conflicts")


def compose(inputs: Iterable[LicenseSpec]) -> CompositeTerms:
    """Order-independent combination of the inputs' attribute sets."""
    specs = {spec.id: spec for spec in inputs}
    if not specs:
        raise ValueError("compose requires at least one license")
    permissions = frozenset(PERMISSIONS)
    duties: frozenset[str] = frozenset()
    prohibitions: frozenset[str] = frozenset()
    pins = set()
    for spec in specs.values():
        permissions &= spec.permissions
        duties |= spec.duties
        prohibitions |= spec.prohibitions
        if spec.share_alike:
            pins.add(spec.id)
    return CompositeTerms(
        permissions=permissions,
        duties=duties,
        prohibitions=prohibitions,
        share_alike_pins=frozenset(pins),
    )


def check_compatibility(inputs: Iterable[LicenseSpec]) -> Verdict:
    """Can datasets under these licenses be combined at all?"""
    specs = {spec.id: spec for spec in inputs}
    if not specs:
        raise ValueError("check_compatibility requires at least one license")
    conflicts: list[Conflict] = []

    for spec in sorted(specs.values(), key=lambda s: s.id.value):
        if not spec.known:
            conflicts.append(Conflict(UNKNOWN_LICENSE, f"license not in database: {spec.id.value}"))
    if conflicts:
        return Verdict(compatible=False, conflicts=tuple(conflicts))

    composite = compose(specs.values())
    pins = sorted(composite.share_alike_pins, key=lambda i: i.value)
    if len(pins) > 1:
        conflicts.append(
            Conflict(
                SHARE_ALIKE_CLASH,
                "more than one share-alike license: " + ", ".join(i.value for i in pins),
            )
        )
    for pin in pins:
        clashing = specs[pin].permissions & composite.prohibitions
        if clashing:
            conflicts.append(
                Conflict(
                    PERMISSION_PROHIBITION_CLASH,
                    f"{pin.value} grants {sorted(clashing)} which the combination prohibits",
                )
            )
    return Verdict(compatible=not conflicts, conflicts=tuple(conflicts))


def relicensing_candidates(
    inputs: Iterable[LicenseSpec], db: Iterable[LicenseSpec]
) -> list[LicenseSpec]:
    """Licenses under which the combined datasets may be republished.

    A candidate must not grant more than the composite permits, must keep
    every composite duty and prohibition, and a share-alike input pins the
    result to itself. Incompatible inputs yield an empty list.
    """
    specs = {spec.id: spec for spec in inputs}
    if not check_compatibility(specs.values()).compatible:
        return []
    composite = compose(specs.values())
    candidates = []
    for candidate in db:
        if composite.share_alike_pins and candidate.id not in composite.share_alike_pins:
            continue
        if not candidate.permissions <= composite.permissions:
            continue
        if not candidate.duties >= composite.duties:
            continue
        if not candidate.prohibitions >= composite.prohibitions:
            continue
        candidates.append(candidate)
    return sorted(candidates, key=lambda s: s.id.value)


# --- license database -----------------------------------------------------------


class LicenseDb:
    def __init__(self, specs: Iterable[LicenseSpec]):
        self.specs = sorted(specs, key=lambda s: s.id.value)
        self.by_id = {spec.id: spec for spec in self.specs}

    def __len__(self) -> int:
        return len(self.specs)

    def __iter__(self):
        return iter(self.specs)

    def get(self, iri: Iri) -> Optional[LicenseSpec]:
        return self.by_id.get(iri)

    def resolve(self, iri: Iri) -> LicenseSpec:
        """Known spec for the IRI, or an unknown-license placeholder."""
        return self.by_id.get(iri) or unknown_license(iri)


def _parse_set(cell: str, allowed: frozenset[str], what: str, line: int) -> frozenset[str]:
    values = frozenset(v.strip() for v in cell.split("|") if v.strip())
    bad = values - allowed
    if bad:
        raise ValueError(f"line {line}: unknown {what}: {sorted(bad)}")
    return values


def parse_license_db(text: str) -> LicenseDb:
    specs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        parts = raw.split("\t")
        if not 4 <= len(parts) <= 6:
            raise ValueError(f"line {lineno}: expected 4-6 tab-separated fields, got {len(parts)}")
        parts += [""] * (6 - len(parts))  # duties/prohibitions may be omitted
        id_, name, open_flag, permissions, duties, prohibitions = (p.strip() for p in parts)
        specs.append(
            LicenseSpec(
                id=Iri(id_),
                name=name,
                open=open_flag.lower() == "true",
                permissions=_parse_set(permissions, PERMISSIONS, "permission", lineno),
                duties=_parse_set(duties, DUTIES, "duty", lineno),
                prohibitions=_parse_set(prohibitions, PROHIBITIONS, "prohibition", lineno),
            )
        )
    return LicenseDb(specs)


def load_license_db(path: Optional[Path] = None) -> LicenseDb:
    if path is not None:
        return parse_license_db(Path(path).read_text(encoding="utf-8"))
    text = resources.files("dcatq").joinpath("data/licenses.tsv").read_text(encoding="utf-8")
    return parse_license_db(text)
