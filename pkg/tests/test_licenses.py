import itertools
import random

import pytest

from dcatq.licenses import (
    DUTIES,
    PERMISSIONS,
    PROHIBITIONS,
    SHARE_ALIKE_CLASH,
    UNKNOWN_LICENSE,
    CompositeTerms,
    LicenseSpec,
    check_compatibility,
    compose,
    load_license_db,
    relicensing_candidates,
    unknown_license,
)
from dcatq.rdf import Iri

DB = load_license_db()

CC0 = DB.resolve(Iri("https://creativecommons.org/publicdomain/zero/1.0/"))
CC_BY = DB.resolve(Iri("https://creativecommons.org/licenses/by/4.0/"))
CC_BY_SA = DB.resolve(Iri("https://creativecommons.org/licenses/by-sa/4.0/"))
CC_BY_ND = DB.resolve(Iri("https://creativecommons.org/licenses/by-nd/4.0/"))
ODBL = DB.resolve(Iri("https://opendatacommons.org/licenses/odbl/1-0/"))


def test_bundled_db_has_twelve_known_licenses():
    assert len(DB) == 12
    assert all(spec.known for spec in DB)
    assert CC0.open and not CC0.duties
    assert CC_BY.duties == frozenset({"attribution"})


def test_compose_single_license():
    composite = compose([CC_BY])
    assert composite.duties == frozenset({"attribution"})
    assert composite.permissions == PERMISSIONS
    assert composite.share_alike_pins == frozenset()


def test_compose_pair_union_intersection():
    composite = compose([CC_BY, CC0])
    assert composite.duties == frozenset({"attribution"})
    assert composite.permissions == CC_BY.permissions


def test_compose_empty_is_an_error():
    with pytest.raises(ValueError):
        compose([])


def test_same_license_twice_is_compatible():
    verdict = check_compatibility([CC_BY_SA, CC_BY_SA])
    assert verdict.compatible


def test_two_share_alike_licenses_clash():
    verdict = check_compatibility([CC_BY_SA, ODBL])
    assert not verdict.compatible
    assert any(c.kind == SHARE_ALIKE_CLASH for c in verdict.conflicts)


def test_cc0_and_cc_by_compatible():
    verdict = check_compatibility([CC0, CC_BY])
    assert verdict.compatible
    assert verdict.conflicts == ()


def test_nd_prohibition_clashes_with_share_alike_pin():
    verdict = check_compatibility([CC_BY_ND, CC_BY_SA])
    assert not verdict.compatible
    assert any(c.kind == "permission_prohibition_clash" for c in verdict.conflicts)


def test_unknown_license_is_conservatively_incompatible():
    verdict = check_compatibility([CC_BY, unknown_license(Iri("http://example.org/strange-terms"))])
    assert not verdict.compatible
    assert any(c.kind == UNKNOWN_LICENSE for c in verdict.conflicts)


def test_relicensing_for_cc_by():
    ids = {c.id for c in relicensing_candidates([CC_BY], DB)}
    assert CC_BY.id in ids
    assert CC_BY_SA.id in ids
    assert CC0.id not in ids


def test_relicensing_share_alike_pins_to_itself():
    assert relicensing_candidates([CC_BY_SA, CC_BY], DB) == [CC_BY_SA]


def test_relicensing_incompatible_inputs_is_empty():
    assert relicensing_candidates([CC_BY_SA, ODBL], DB) == []


# --- properties -------------------------------------------------------------------


def random_spec(rng: random.Random, idx: int) -> LicenseSpec:
    permissions = frozenset(a for a in PERMISSIONS if rng.random() < 0.6)
    prohibitions = frozenset(a for a in PROHIBITIONS - permissions if rng.random() < 0.3)
    duties = frozenset(a for a in DUTIES if rng.random() < 0.4)
    return LicenseSpec(
        id=Iri(f"http://example.org/license/{idx}"),
        name=f"L{idx}",
        permissions=permissions,
        duties=duties,
        prohibitions=prohibitions,
        open=rng.random() < 0.5,
    )


def test_compose_commutative_and_idempotent_fuzz():
    rng = random.Random(42)
    for round_ in range(1000):
        specs = [random_spec(rng, i) for i in range(rng.randint(1, 4))]
        shuffled = specs[:]
        rng.shuffle(shuffled)
        assert compose(specs) == compose(shuffled)
        assert compose(specs + specs) == compose(specs)


def test_compose_associative_at_set_level():
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = (random_spec(rng, i) for i in range(3))
        left = compose([a, b, c])
        # composing the union of the raw sets is the reference result
        assert left == compose([c, a, b])
        assert left.duties == compose([a, b]).duties | compose([c]).duties
        assert left.permissions == compose([a, b]).permissions & compose([c]).permissions


def test_every_single_known_license_is_self_compatible():
    for spec in DB:
        assert check_compatibility([spec]).compatible, spec.id.value


def oracle_candidates(inputs, db):
    """Brute-force restatement of the candidate conditions."""
    if not check_compatibility(inputs).compatible:
        return []
    permissions = frozenset(PERMISSIONS)
    duties = frozenset()
    prohibitions = frozenset()
    pins = set()
    for spec in {s.id: s for s in inputs}.values():
        permissions = permissions & spec.permissions
        duties = duties | spec.duties
        prohibitions = prohibitions | spec.prohibitions
        if "share_alike" in spec.duties:
            pins.add(spec.id)
    out = []
    for cand in db:
        if pins and cand.id not in pins:
            continue
        if cand.permissions.issubset(permissions) and cand.duties.issuperset(duties) and cand.prohibitions.issuperset(prohibitions):
            out.append(cand)
    return sorted(out, key=lambda s: s.id.value)


def test_relicensing_matches_bruteforce_for_small_subsets():
    specs = list(DB)
    for size in (1, 2, 3, 4):
        for subset in itertools.combinations(specs, size):
            assert relicensing_candidates(subset, DB) == oracle_candidates(subset, DB)


def test_inputs_satisfying_bounds_are_candidates():
    for size in (1, 2):
        for subset in itertools.combinations(list(DB), size):
            candidates = set(relicensing_candidates(subset, DB))
            composite = compose(subset)
            if not check_compatibility(subset).compatible:
                continue
            for spec in subset:
                ok = (
                    spec.permissions <= composite.permissions
                    and spec.duties >= composite.duties
                    and spec.prohibitions >= composite.prohibitions
                    and (not composite.share_alike_pins or spec.id in composite.share_alike_pins)
                )
                if ok:
                    assert spec in candidates


def test_adding_license_never_enlarges_candidates():
    rng = random.Random(99)
    specs = list(DB)
    for _ in range(300):
        base = rng.sample(specs, rng.randint(1, 3))
        extra = rng.choice(specs)
        before = set(s.id for s in relicensing_candidates(base, DB))
        after = set(s.id for s in relicensing_candidates(base + [extra], DB))
        assert after <= before
