from placeql import morph


def test_singularize():
    assert morph.singularize("pharmacies") == "pharmacy"
    assert morph.singularize("churches") == "church"
    assert morph.singularize("castles") == "castle"
    assert morph.singularize("radius") == "radius"
    assert morph.singularize("glass") == "glass"


def test_verb_lemma():
    assert morph.verb_lemma("crosses") == "cross"
    assert morph.verb_lemma("has") == "have"
    assert morph.verb_lemma("borders") == "border"
    assert morph.verb_lemma("flowing") == "flow"


def test_number_tokens():
    assert morph.number_value("200") == 200
    assert morph.number_value("two") == 2
    assert morph.number_value("2.5") == 2.5
    assert morph.is_number_token("ten")
    assert not morph.is_number_token("tenner")


def test_year_detection_window():
    assert morph.is_year_token("1900")
    assert morph.is_year_token("2024")
    assert not morph.is_year_token("1000")
    assert not morph.is_year_token("12345")


def test_upper_snake():
    assert morph.upper_snake("in radius of") == "IN_RADIUS_OF"
    assert morph.upper_snake("next to") == "NEXT_TO"
