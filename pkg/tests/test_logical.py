import random

import pytest

from placeql.errors import LogicalSyntaxError, UnboundIntent
from placeql.logical import (
    Declaration,
    FunctionApp,
    Group,
    LogicalStatement,
    Term,
    parse_logical,
    serialize,
    to_struct,
    validate_statement,
)
from placeql.parsetree import Measure

EQ1 = ("COUNT(x0): PLACE(High Street) ∧ PLACE(Oxford) ∧ PHARMACY(x0) "
       "∧ IN_RADIUS_OF(x0, High Street, 200 meter) "
       "∧ IN(High Street, Oxford)")


def test_intro_statement_matches_published_logical_form(intro_result):
    assert intro_result.logical_text == EQ1


def test_conjunction_distribution_cross_pair(compiler):
    r = compiler.compile("Are there any rivers that cross both England and Wales?",
                         logical_only=True)
    assert "CROSS(x0, England)" in r.logical_text
    assert "CROSS(x0, Wales)" in r.logical_text
    assert r.logical_text.startswith("ASK: ")


def test_minimal_statement_single_place(compiler):
    r = compiler.compile("Where is Ben Nevis?", logical_only=True)
    assert r.logical_text == "LOCATION(Ben Nevis): PLACE(Ben Nevis)"


def test_empty_body_boolean_sentinel():
    stmt = LogicalStatement("ask", [], [])
    assert serialize(stmt) == "ASK: true"


def test_ascii_mode(compiler):
    r = compiler.compile("What is the largest city in UK except London?",
                         logical_only=True, ascii_logic=True)
    assert "AND" in r.logical_text and "NOT EQUALS" in r.logical_text
    assert "∧" not in r.logical_text


def test_serialization_is_deterministic(compiler, corpus_entries):
    for entry in corpus_entries[:10]:
        a = compiler.compile(entry.question, logical_only=True).logical_text
        b = compiler.compile(entry.question, logical_only=True).logical_text
        assert a == b


def test_round_trip_corpus(compiler, corpus_entries):
    for entry in corpus_entries:
        stmt = compiler.compile(entry.question, logical_only=True).statement
        parsed = parse_logical(serialize(stmt))
        assert to_struct(parsed) == to_struct(stmt), entry.id


def _random_statement(rng):
    constants = [Term("constant", name, "place")
                 for name in ("Alpha Bay", "Betaville", "Gamma Point")]
    variables = [Term("variable", "x%d" % i, "place") for i in range(2)]
    body = []
    for term in constants[:rng.randint(1, 3)]:
        body.append(Declaration("PLACE", term))
    for i, var in enumerate(variables[:rng.randint(1, 2)]):
        body.append(Declaration(rng.choice(["CITY", "RIVER", "CASTLE"]), var))
    relations = []
    for _ in range(rng.randint(0, 3)):
        name = rng.choice(["IN", "NEAR", "CROSS", ">="])
        args = [rng.choice(variables), rng.choice(constants)]
        if rng.random() < 0.3:
            args.append(Measure(rng.randint(1, 500), "meter"))
        if name == ">=":
            args = args[:1] + [Measure(rng.randint(1, 9), "castles")]
        relations.append(FunctionApp(
            name, tuple(args),
            polarity=rng.choice(["positive", "positive", "negated"]),
            category="comparison" if name == ">=" else "spatial"))
    if len(relations) >= 2 and rng.random() < 0.4:
        body.append(Group("or", relations[:2]))
        body.extend(relations[2:])
    else:
        body.extend(relations)
    return LogicalStatement("select", [variables[0]], body)


def test_round_trip_random_statements():
    rng = random.Random(123)
    for _ in range(200):
        stmt = _random_statement(rng)
        text = serialize(stmt)
        assert to_struct(parse_logical(text)) == to_struct(stmt), text


def test_parse_rejects_garbage():
    with pytest.raises(LogicalSyntaxError):
        parse_logical("no head separator here")
    with pytest.raises(LogicalSyntaxError):
        parse_logical("x0: PLACE(")


def test_conjunction_replication_property(compiler, corpus_entries):
    # for every conjunction of names, a relation mentioning one constituent
    # exists for every sibling constituent
    for entry in corpus_entries:
        r = compiler.compile(entry.question, logical_only=True)
        for ph in r.ctree.phrases:
            if ph.kind != "conjunction":
                continue
            member_texts = [m.text for m in ph.constituents]
            stmt = r.statement
            apps = list(stmt.functions())
            for app in apps:
                names = [a.name for a in app.args
                         if isinstance(a, Term) and a.kind == "constant"]
                hit = [m for m in member_texts if m in names]
                if not hit:
                    continue
                for sibling in member_texts:
                    assert any(
                        sibling in [a.name for a in other.args
                                    if isinstance(a, Term)]
                        and other.name == app.name
                        for other in apps), (entry.id, sibling)


def test_arity_discipline_and_variable_hygiene(compiler, corpus_entries):
    for entry in corpus_entries:
        stmt = compiler.compile(entry.question, logical_only=True).statement
        validate_statement(stmt)


def test_unbound_intent():
    from placeql.intent import Intent
    from placeql.logical import build_statement
    from placeql.parsetree import ConceptRef, RelationSet, ConstituencyNode
    from placeql.encoding import EncodingClass
    from placeql.interchange import Token

    tokens = [Token(0, "Oxford", "NNP", "Oxford")]
    tree = ConstituencyNode("S", [], 0, 1, "Oxford")
    ref = ConceptRef(0, 1, EncodingClass.PLACE_TYPE, "ghosts", "ghost")
    intent = Intent(kind="select_entities",
                    targets=[ConceptRef(5, 6, EncodingClass.PLACE_TYPE,
                                        "other", "other")])
    with pytest.raises(UnboundIntent):
        build_statement([ref], RelationSet(), tree, intent, tokens, None)
