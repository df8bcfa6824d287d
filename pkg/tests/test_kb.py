import pytest

from placeql.errors import GeometryError, KbParseError, NotFound, Unmapped
from placeql.kb import (
    Thresholds,
    identify_concepts,
    load_kb,
    map_type_or_property,
    normalize_name,
)


def test_bundled_kb_loads_with_scale_and_invariants(kb):
    assert kb.entity_count() >= 200
    for uri in set(u for uris in kb.name_index.values() for u in uris):
        assert any(t[0] == uri for t in kb.triples) or uri in kb.geometries
    # every geometry parsed at load time; spot-check one
    assert kb.geometries["yago:Oxford"].kind == "polygon"


def test_empty_file_is_a_valid_kb(tmp_path):
    path = tmp_path / "empty.tsv"
    path.write_text("", encoding="utf-8")
    kb = load_kb(path)
    assert kb.entity_count() == 0 and kb.triples == []


def test_bad_wkt_names_the_uri(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text('yago:Broken\tgeo:asWKT\t"POLYGON((0 0, 1 1))"\n',
                    encoding="utf-8")
    with pytest.raises(GeometryError) as err:
        load_kb(path)
    assert "yago:Broken" in str(err.value)


def test_parse_error_carries_line_number(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text("just-one-field\n", encoding="utf-8")
    with pytest.raises(KbParseError) as err:
        load_kb(path)
    assert "line 1" in str(err.value)


def test_identify_high_street_two_candidates(kb):
    assert identify_concepts("High Street", kb) == \
        ["yago2geo:OSM_HighStreet246", "yago2geo:OSM_HighStreet301"]


def test_identify_oxford_two_candidates(kb):
    assert identify_concepts("Oxford", kb) == \
        ["yago:Oxford", "yago2geo:OSM_Oxford813"]


def test_identify_normalizes_case_and_punctuation(kb):
    assert identify_concepts("high street", kb) == \
        identify_concepts("High Street", kb)
    assert normalize_name("St. Paul's Cathedral") == "st pauls cathedral"


def test_identify_unknown_name(kb):
    with pytest.raises(NotFound):
        identify_concepts("Zzyzzx", kb)


def test_mapping_pharmacies_three_uris_in_order(kb, vectors):
    result = map_type_or_property("pharmacies", "type", kb, vectors)
    assert result.uris == ["yago:wordnet_drugstore_103249342",
                           "geont:OSM_amenity_veterinary",
                           "geont:OSM_amenity_pharmacy"]
    assert result.stage == "label"
    assert all(s >= 0.85 for s in result.scores.values())


def test_mapping_exact_stage_scores_one(kb, vectors):
    result = map_type_or_property("pharmacy", "type", kb, vectors)
    assert result.stage == "exact"
    assert result.uris == ["geont:OSM_amenity_pharmacy"]
    assert result.scores["geont:OSM_amenity_pharmacy"] == 1.0


def test_mapping_underground_lines_unmapped(kb, vectors):
    with pytest.raises(Unmapped):
        map_type_or_property("underground lines", "type", kb, vectors)


def test_mapping_glossary_stage(kb, vectors):
    result = map_type_or_property("graveyards", "type", kb, vectors)
    assert result.stage == "glossary"
    assert result.uris == ["geont:OSM_landuse_cemetery"]
    assert all(s >= 0.70 for s in result.scores.values())


def test_mapping_property_kind(kb, vectors):
    result = map_type_or_property("population", "property", kb, vectors)
    assert result.uris == ["geont:hasPopulation"]
    assert result.stage == "exact"


def test_stage_monotonicity(kb, vectors):
    # when exact matching succeeds, later stages are never consulted even
    # with thresholds lowered to zero
    loose = Thresholds(label=0.0, glossary=0.0)
    result = map_type_or_property("pharmacy", "type", kb, vectors, loose)
    assert result.stage == "exact"
    assert result.uris == ["geont:OSM_amenity_pharmacy"]


def test_threshold_soundness(kb, vectors):
    # lowering the winning stage's threshold never removes a returned URI
    base = map_type_or_property("pharmacies", "type", kb, vectors,
                                Thresholds(label=0.85))
    lower = map_type_or_property("pharmacies", "type", kb, vectors,
                                 Thresholds(label=0.5))
    assert set(base.uris) <= set(lower.uris)
    for uri, score in base.scores.items():
        assert score >= 0.85


def test_index_consistency(kb):
    subjects = {t[0] for t in kb.triples}
    for name, uris in kb.name_index.items():
        for uri in uris:
            assert uri in subjects
