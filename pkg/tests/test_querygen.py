import re

import pytest

from placeql.errors import MissingMapping, UnknownUnit, UnsupportedRelation
from placeql.geoeval import parse_query
from placeql.logical import Declaration, FunctionApp, LogicalStatement, Term
from placeql.querygen import (
    AskHead,
    Mappings,
    OrderBy,
    SelectHead,
    SfFilter,
    generate_query,
    serialize_query,
    unit_uri,
)
from placeql.scoring import canonical_query_text


def _ask_containment_statement():
    oxford = Term("constant", "Oxford", "place")
    england = Term("constant", "England", "place")
    return LogicalStatement(
        "ask", [],
        [Declaration("PLACE", oxford), Declaration("PLACE", england),
         FunctionApp("IN", (oxford, england), category="spatial")],
        term_surfaces={"Oxford": "Oxford", "England": "England"})


def test_hand_assembled_ask_query(compiler):
    stmt = _ask_containment_statement()
    mappings = Mappings(terms={"Oxford": ["yago:Oxford"],
                               "England": ["yago:England"]})
    ast = generate_query(stmt, mappings, compiler.relation_table,
                         compiler.lexicons.qualities)
    assert isinstance(ast.head, AskHead)
    filters = [c for c in ast.where if isinstance(c, SfFilter)]
    assert filters == [SfFilter("geof:sfContains", "c1", "c0")]
    expected = """
    ASK
    WHERE {
    VALUES ?c0 {yago:Oxford}.
    ?c0 geosparql:hasGeometry ?c0G .
    ?c0G geosparql:asWKT ?c0GEOM .
    VALUES ?c1 {yago:England}.
    ?c1 geosparql:hasGeometry ?c1G .
    ?c1G geosparql:asWKT ?c1GEOM .
    FILTER (geof:sfContains(?c1GEOM, ?c0GEOM)).
    }
    """
    body = serialize_query(ast).split("PREFIX yago2geo:"
                                      " <http://kr.di.uoa.gr/yago2geo/resource/>")[1]
    assert canonical_query_text(body) == canonical_query_text(expected)


def test_superlative_emits_order_by(compiler, kb):
    r = compiler.compile("What is the longest river in England?")
    ast = r.query_ast
    assert ast.order_by == OrderBy("DESC", "o0", 1)
    assert "ORDER BY DESC (?o0) LIMIT 1." in r.query_text
    assert "VALUES ?a0 {geont:hasLength}." in r.query_text


def test_ask_with_empty_where_is_valid():
    from placeql.querygen import QueryAst
    text = serialize_query(QueryAst(AskHead(), []))
    ast = parse_query(text)
    assert isinstance(ast.head, AskHead) and ast.where == []


def test_serialize_then_reparse_round_trip(compiler, corpus_entries):
    for entry in corpus_entries:
        r = compiler.compile(entry.question)
        assert parse_query(serialize_query(r.query_ast)) == r.query_ast


def test_variable_naming_convention(compiler, corpus_entries):
    for entry in corpus_entries:
        r = compiler.compile(entry.question)
        text = r.query_text
        constants = sorted(set(re.findall(r"\?c(\d+)\b", text)))
        assert constants == [str(i) for i in range(len(constants))], entry.id
        assert not re.findall(r"\?x(?!\d)", text)


def test_unit_mapping():
    assert unit_uri("meter") == "units:meter"
    assert unit_uri("meters") == "units:meter"
    assert unit_uri("km") == "units:kilometer"
    assert unit_uri("miles") == "units:mile"
    with pytest.raises(UnknownUnit):
        unit_uri("parsecs")


def test_missing_mapping_raises(compiler):
    stmt = _ask_containment_statement()
    with pytest.raises(MissingMapping):
        generate_query(stmt, Mappings(terms={"Oxford": ["yago:Oxford"]}),
                       compiler.relation_table, compiler.lexicons.qualities)


def test_unsupported_relation_raises(compiler):
    oxford = Term("constant", "Oxford", "place")
    england = Term("constant", "England", "place")
    stmt = LogicalStatement(
        "ask", [],
        [Declaration("PLACE", oxford), Declaration("PLACE", england),
         FunctionApp("ORBITS", (oxford, england), category="spatial")])
    mappings = Mappings(terms={"Oxford": ["yago:Oxford"],
                               "England": ["yago:England"]})
    with pytest.raises(UnsupportedRelation):
        generate_query(stmt, mappings, compiler.relation_table,
                       compiler.lexicons.qualities)


TEMPLATE_PATTERNS = [
    re.compile(r"^VALUES \?\w+ \{[^{}]+\}\.$"),
    re.compile(r"^\?(\w+) geosparql:hasGeometry \?\1G \.\n"
               r"\?\1G geosparql:asWKT \?\1GEOM \.$"),
    re.compile(r"^\?(\w+) rdf:type \?\1TYPE;\n"
               r"    geosparql:hasGeometry \?\1G \.\n"
               r"\?\1G geosparql:asWKT \?\1GEOM \.\n"
               r"VALUES \?\1TYPE \{[^{}]+\} \.$"),
    re.compile(r"^VALUES \?(a\d+) \{[^{}]+\}\.\n\?\w+ \?\1 \?\w+\.$"),
    re.compile(r"^FILTER\(geof:distance\(\?\w+GEOM, \?\w+GEOM, units:\w+\) "
               r"[<>]=? \d+(\.\d+)?\)\.$"),
    re.compile(r"^FILTER \(geof:\w+\(\?\w+GEOM, \?\w+GEOM\)"
               r"( \|\| geof:\w+\(\?\w+GEOM, \?\w+GEOM\))*\)\.$"),
    re.compile(r"^FILTER \(\?\w+ != [\w:]+( && \?\w+ != [\w:]+)*\)\.$"),
    re.compile(r"^FILTER \(\?\w+ [<>]=? \d+(\.\d+)?\)\.$"),
]


def test_template_fidelity(compiler, corpus_entries):
    # every emitted clause matches exactly one of the fixed templates
    from placeql.querygen import render_clause
    for entry in corpus_entries:
        r = compiler.compile(entry.question)
        for clause in r.query_ast.where:
            text = render_clause(clause)
            assert any(p.match(text) for p in TEMPLATE_PATTERNS), \
                (entry.id, text)


def test_syntactic_validity_of_all_corpus_queries(compiler, corpus_entries):
    for entry in corpus_entries:
        r = compiler.compile(entry.question)
        parse_query(r.query_text)  # must not raise
