from placeql import interchange
from placeql.tagger import annotate


def test_annotation_document_is_schema_valid(compiler, corpus_entries):
    for entry in corpus_entries:
        doc = annotate(entry.question, compiler.lexicons)
        interchange.validate_document(interchange.to_json(doc))


def test_entities_cover_proper_nouns(compiler):
    doc = annotate("Is Oxford Castle near Carfax Tower?", compiler.lexicons)
    texts = [doc.token_texts(e.start, e.end) for e in doc.entities]
    assert texts == ["Oxford Castle", "Carfax Tower"]


def test_gazetteer_merge_is_longest_first(compiler):
    doc = annotate("Is High Street in Oxford?", compiler.lexicons)
    assert [t.text for t in doc.tokens][1] == "High Street"


def test_dependency_tree_single_root(compiler, corpus_entries):
    for entry in corpus_entries:
        doc = annotate(entry.question, compiler.lexicons)
        roots = [d for d in doc.dependencies if d.head == -1]
        assert len(roots) == 1, entry.id


def test_constituency_covers_tokens_in_order(compiler, corpus_entries):
    for entry in corpus_entries:
        doc = annotate(entry.question, compiler.lexicons)
        leaves = []
        interchange._collect_leaves(doc.constituency, leaves)
        assert leaves == list(range(len(doc.tokens)))


def test_interchange_round_trip(compiler):
    doc = annotate("Which museums are in York?", compiler.lexicons)
    text = interchange.dumps(doc, pretty=True)
    again = interchange.loads(text)
    assert again == doc


def test_do_support_inversion(compiler):
    doc = annotate("How many counties does Wales have?", compiler.lexicons)
    by_dep = {d.dep: d for d in doc.dependencies}
    tokens = {t.text: t.index for t in doc.tokens}
    assert by_dep[tokens["Wales"]].label == "nsubj"
    assert by_dep[tokens["counties"]].label == "dobj"


def test_copular_inversion_promotes_subject(compiler):
    doc = annotate("Where is Wolverhampton?", compiler.lexicons)
    by_dep = {d.dep: d for d in doc.dependencies}
    tokens = {t.text: t.index for t in doc.tokens}
    assert by_dep[tokens["Wolverhampton"]].label == "nsubj"


def test_relative_clause_attaches_to_antecedent(compiler):
    doc = annotate("Are there any rivers that cross both England and Wales?",
                   compiler.lexicons)
    tokens = {t.text: t.index for t in doc.tokens}
    by_dep = {d.dep: d for d in doc.dependencies}
    arc = by_dep[tokens["cross"]]
    assert arc.label == "relcl" and arc.head == tokens["rivers"]
