import random

import pytest

from placeql.annotation import extract_encodings
from placeql.encoding import QUESTION_CODES, EncodingClass
from placeql.errors import NoIntent, UnsupportedIntent
from placeql.intent import resolve_intent, specificity_rank
from placeql.parsetree import build_constituency, concept_refs, label_phrases, \
    trim_and_encode


def analyzed(compiler, question):
    doc = compiler.annotate(question)
    anns = extract_encodings(doc.tokens, doc.entities, compiler.lexicons,
                             compiler.vectors)
    ctree = build_constituency(doc.constituency, doc.tokens)
    ctree = trim_and_encode(ctree, anns, doc.tokens)
    ctree = label_phrases(ctree, doc.tokens, compiler.lexicons)
    concepts = concept_refs(anns, doc.tokens)
    qword = next(a for a in anns if a.cls in QUESTION_CODES)
    return doc, ctree, concepts, qword


def resolve(compiler, question, concepts_override=None):
    doc, ctree, concepts, qword = analyzed(compiler, question)
    return resolve_intent(qword.cls, concepts_override or concepts, ctree,
                          doc.tokens, (qword.start, qword.end))


def test_intro_intent_is_count_of_pharmacies(compiler):
    intent = resolve(compiler,
                     "How many pharmacies are in 200 meter radius of "
                     "High Street in Oxford?")
    assert intent.kind == "count" and intent.operator == "COUNT"
    assert [t.text for t in intent.targets] == ["pharmacies"]


def test_location_phrase_member_is_excluded(compiler):
    intent = resolve(compiler, "Where in the UK is Wolverhampton?")
    assert intent.kind == "select_location"
    assert [t.text for t in intent.targets] == ["Wolverhampton"]


def test_earliest_concept_wins_position_rule(compiler):
    intent = resolve(compiler, "Which river crosses the most cities in England?")
    assert intent.kind == "select_entities"
    assert [t.text for t in intent.targets] == ["river"]


def test_boolean_intent_has_no_target(compiler):
    intent = resolve(compiler, "Is Oxford in England?")
    assert intent.kind == "ask_boolean" and intent.targets == []


def test_distance_intent_takes_two_names(compiler):
    intent = resolve(compiler, "How far is Cambridge from London?")
    assert intent.kind == "distance" and intent.operator == "DISTANCE"
    assert [t.text for t in intent.targets] == ["Cambridge", "London"]


def test_property_intent(compiler):
    intent = resolve(compiler, "What is the population of Scotland?")
    assert intent.kind == "select_property"
    assert [t.text for t in intent.targets] == ["population"]


def test_why_unsupported(compiler):
    with pytest.raises(UnsupportedIntent):
        resolve(compiler, "Why is Oxford in England?")


def test_when_maps_to_date_property(compiler):
    intent = resolve(compiler, "When was Edinburgh Castle founded?")
    assert intent.kind == "select_property" and intent.detail == "date"
    assert [t.text for t in intent.targets] == ["Edinburgh Castle"]


def test_no_intent_when_everything_filtered(compiler):
    doc, ctree, concepts, qword = analyzed(compiler, "Which castles are in Wales?")
    only_excluded = [c for c in concepts if c.text == "Wales"]
    with pytest.raises(NoIntent):
        resolve_intent(qword.cls, only_excluded, ctree, doc.tokens,
                       (qword.start, qword.end))


def test_specificity_ordering(compiler):
    assert specificity_rank(EncodingClass.PROPERTY) < \
        specificity_rank(EncodingClass.PLACE_TYPE) < \
        specificity_rank(EncodingClass.PLACE_NAME)
    # type beats name among valid candidates
    intent = resolve(compiler, "Which cities in England have at least two castles?")
    assert [t.text for t in intent.targets] == ["cities"]


def test_order_stability_under_permutation(compiler, corpus_entries):
    rng = random.Random(3)
    for entry in rng.sample(corpus_entries, 10):
        doc, ctree, concepts, qword = analyzed(compiler, entry.question)
        try:
            base = resolve_intent(qword.cls, concepts, ctree, doc.tokens,
                                  (qword.start, qword.end))
        except (NoIntent, UnsupportedIntent):
            continue
        for _ in range(5):
            shuffled = concepts[:]
            rng.shuffle(shuffled)
            again = resolve_intent(qword.cls, shuffled, ctree, doc.tokens,
                                   (qword.start, qword.end))
            assert [t.span for t in again.targets] == \
                [t.span for t in base.targets]


def test_target_never_inside_location_phrase(compiler, corpus_entries):
    for entry in corpus_entries:
        doc, ctree, concepts, qword = analyzed(compiler, entry.question)
        try:
            intent = resolve_intent(qword.cls, concepts, ctree, doc.tokens,
                                    (qword.start, qword.end))
        except (NoIntent, UnsupportedIntent):
            continue
        if intent.kind in ("distance", "ask_boolean"):
            continue
        for target in intent.targets:
            for ph in ctree.phrases:
                if ph.kind == "location":
                    inside = ph.node.start <= target.start and \
                        target.end <= ph.node.end
                    assert not inside, (entry.id, target.text)
