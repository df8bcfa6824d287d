import pytest

from placeql.annotation import EncodingAnnotation, extract_encodings
from placeql.encoding import EncodingClass
from placeql.errors import SpanMismatch
from placeql.interchange import Token
from placeql.parsetree import (
    ConstituencyNode,
    build_constituency,
    collapse_dependencies,
    extract_dependencies,
    label_phrases,
    trim_and_encode,
)

INTRO = "How many pharmacies are in 200 meter radius of High Street in Oxford?"


def analyzed(compiler, question):
    doc = compiler.annotate(question)
    anns = extract_encodings(doc.tokens, doc.entities, compiler.lexicons,
                             compiler.vectors)
    ctree = build_constituency(doc.constituency, doc.tokens)
    ctree = trim_and_encode(ctree, anns, doc.tokens)
    ctree = label_phrases(ctree, doc.tokens, compiler.lexicons)
    dtree = collapse_dependencies(doc.dependencies, doc.tokens, ctree,
                                  doc.entities)
    return doc, ctree, dtree


def phrase_texts(ctree, tokens, kind):
    return [" ".join(t.text for t in tokens[ph.node.start:ph.node.end])
            for ph in ctree.phrases if ph.kind == kind]


def test_compound_name_is_a_leaf_with_encoding(compiler):
    doc, ctree, _ = analyzed(compiler, INTRO)
    leaves = [n for n in ctree.leaves() if n.text == "High Street"]
    assert len(leaves) == 1
    assert leaves[0].encoding is EncodingClass.PLACE_NAME


def test_trim_without_annotations_keeps_tree(compiler):
    doc = compiler.annotate(INTRO)
    plain = build_constituency(doc.constituency, doc.tokens)
    before = [(n.label, n.span) for n in plain.walk()]
    trimmed = trim_and_encode(plain, [], doc.tokens)
    assert [(n.label, n.span) for n in trimmed.walk()] == before
    assert all(n.encoding is None for n in trimmed.walk())


def test_span_crossing_constituents_is_rejected():
    tokens = [Token(0, "a", "DT", "a"), Token(1, "b", "NN", "b"),
              Token(2, "c", "NN", "c"), Token(3, "d", "NN", "d")]
    # two sibling constituents [0,2) and [2,4); the span [1,3) crosses them
    tree = build_constituency(["S", ["NP", 0, 1], ["NP", 2, 3]], tokens)
    ann = EncodingAnnotation(1, 3, EncodingClass.PLACE_NAME, "ingested")
    with pytest.raises(SpanMismatch):
        trim_and_encode(tree, [ann], tokens)


def test_intro_location_and_measure_phrases(compiler):
    doc, ctree, _ = analyzed(compiler, INTRO)
    locations = phrase_texts(ctree, doc.tokens, "location")
    assert "in Oxford" in locations
    assert "in 200 meter radius of High Street in Oxford" in locations
    assert len(locations) == 2
    measures = phrase_texts(ctree, doc.tokens, "measure")
    assert measures == ["200 meter"]


def test_location_phrase_minimality(compiler, corpus_entries):
    # no labeled location phrase strictly contains another with the same
    # relation token span
    for entry in corpus_entries:
        doc, ctree, _ = analyzed(compiler, entry.question)
        locations = [ph for ph in ctree.phrases if ph.kind == "location"]
        for a in locations:
            for b in locations:
                if a is b or a.relation_span != b.relation_span:
                    continue
                strictly = a.node.contains(*b.node.span) and \
                    a.node.span != b.node.span
                assert not strictly


def test_negation_phrase(compiler):
    doc, ctree, _ = analyzed(compiler,
                             "What is the largest city in UK except London?")
    negations = [ph for ph in ctree.phrases if ph.kind == "negation"]
    assert len(negations) == 1
    assert negations[0].target.text == "London"
    assert "except London" in " ".join(
        t.text for t in doc.tokens[negations[0].node.start:negations[0].node.end])


def test_comparison_phrase_over_measure_target(compiler):
    doc, ctree, _ = analyzed(compiler, "Which areas have more than ten districts?")
    comparisons = [ph for ph in ctree.phrases if ph.kind == "comparison"]
    assert len(comparisons) == 1
    ph = comparisons[0]
    assert ph.operator == ">"
    assert ph.measure is not None and ph.measure.value == 10
    assert ph.measure.unit == "districts"


def test_quality_phrase(compiler):
    doc, ctree, _ = analyzed(compiler, "What is the longest river in England?")
    qualities = [ph for ph in ctree.phrases if ph.kind == "quality"]
    assert len(qualities) == 1
    assert qualities[0].quality == "longest"
    assert qualities[0].target.text == "river"


def test_conjunction_phrase_same_class_members(compiler, corpus_entries):
    for entry in corpus_entries:
        doc, ctree, _ = analyzed(compiler, entry.question)
        for ph in ctree.phrases:
            if ph.kind != "conjunction":
                continue
            assert len(ph.constituents) >= 2
            assert len({m.cls for m in ph.constituents}) == 1


def test_intro_relation_chain(compiler):
    doc, ctree, dtree = analyzed(compiler, INTRO)
    rel = extract_dependencies(dtree, ctree)
    pairs = [(loc.text, ph.core_text(doc.tokens))
             for loc, ph in rel.locatum_location]
    assert ("pharmacies", "in 200 meter radius of High Street") in pairs
    assert ("High Street", "in Oxford") in pairs
    assert len(pairs) == 2


def test_verb_object_relation(compiler):
    doc, ctree, dtree = analyzed(compiler, "Which markets sell antiques?")
    rel = extract_dependencies(dtree, ctree)
    assert [(v.lemma, o.text) for v, o in rel.situation_property] == \
        [("sell", "antiques")]
    assert [(s.text, v.lemma) for s, v in rel.place_activity] == \
        [("markets", "sell")]


def test_comparison_source_from_subject(compiler):
    doc, ctree, dtree = analyzed(compiler,
                                 "Does England have more counties than Ireland?")
    rel = extract_dependencies(dtree, ctree)
    assert len(rel.comparison_source) == 1
    source, ph = rel.comparison_source[0]
    assert source.text == "England"
    assert "more counties than Ireland" in ph.node.text


def test_phrase_collapse_bijection(compiler, corpus_entries):
    # every outermost collapsible phrase appears as exactly one node in the
    # preprocessed dependency tree
    for entry in corpus_entries:
        doc, ctree, dtree = analyzed(compiler, entry.question)
        collapsible = [ph for ph in ctree.phrases
                       if ph.kind in ("location", "comparison", "negation",
                                      "conjunction")]
        outer = [ph for ph in collapsible
                 if not any(o is not ph and o.node.contains(*ph.node.span)
                            and o.node.span != ph.node.span
                            for o in collapsible)]
        for ph in outer:
            nodes = [n for n in dtree.node_list() if n.phrase is ph]
            assert len(nodes) == 1, (entry.id, ph.kind)


def test_relation_soundness(compiler, corpus_entries):
    # every locatum_location pair's phrase contains a spatiotemporal token
    from placeql.encoding import RELATION_CODES
    for entry in corpus_entries:
        doc, ctree, dtree = analyzed(compiler, entry.question)
        rel = extract_dependencies(dtree, ctree)
        for _loc, ph in rel.locatum_location:
            assert ph.relation_span is not None
            anns = [a for a in ctree.annotations
                    if (a.start, a.end) == ph.relation_span]
            assert anns and anns[0].cls in RELATION_CODES
