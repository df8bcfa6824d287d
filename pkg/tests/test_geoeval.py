import random

import pytest

from placeql.errors import QuerySyntaxError, UnboundVariable, UnsupportedConstruct
from placeql.geoeval import execute, parse_query
from placeql.kb import KnowledgeBase
from placeql.querygen import (
    AskHead,
    CountHead,
    DistanceFilter,
    GeometryBinding,
    GroupBy,
    Having,
    OrderBy,
    QueryAst,
    SelectHead,
    SfFilter,
    TypeBinding,
    ValuesBinding,
    serialize_query,
)
from placeql.geoeval.geometry import parse_wkt, to_wkt

from oracles import naive_execute

QUERY6_TEXT = """
PREFIX geosparql: <http://www.opengis.net/ont/geosparql#>
PREFIX geof: <http://www.opengis.net/def/function/geosparql/>
PREFIX units: <http://www.opengis.net/def/uom/OGC/1.0/>
PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>
PREFIX yago:<http://yago-knowledge.org/resource/>
PREFIX geont: <http://kr.di.uoa.gr/yago2geo/ontology/>
PREFIX yago2geo:<http://kr.di.uoa.gr/yago2geo/resource/>
SELECT DISTINCT (COUNT(distinct ?x0) as ?countx0)
WHERE {
VALUES ?c0 {yago2geo:OSM_HighStreet246
            yago2geo:OSM_HighStreet301}.
?c0 geosparql:hasGeometry ?c0G .
?c0G geosparql:asWKT ?c0GEOM .
VALUES ?c1  {yago:Oxford
            yago2geo:OSM_Oxford813}.
?c1 geosparql:hasGeometry ?c1G .
?c1G geosparql:asWKT ?c1GEOM .
?x0 rdf:type ?x0TYPE;
    geosparql:hasGeometry ?x0G .
?x0G geosparql:asWKT ?x0GEOM .
VALUES ?x0TYPE {yago:wordnet_drugstore_103249342
                geont:OSM_amenity_veterinary
                geont:OSM_amenity_pharmacy} .
FILTER(geof:distance(?x0GEOM, ?c0GEOM, units:meter) < 200).
FILTER (geof:sfContains(?c1GEOM, ?x0GEOM)). }
"""


def test_parse_published_count_query():
    ast = parse_query(QUERY6_TEXT)
    assert isinstance(ast.head, CountHead) and ast.head.variable == "x0"
    values = [c for c in ast.where if isinstance(c, ValuesBinding)]
    types = [c for c in ast.where if isinstance(c, TypeBinding)]
    filters = [c for c in ast.where if isinstance(c, (SfFilter, DistanceFilter))]
    assert len(values) == 2
    assert len(types) == 1 and len(types[0].uris) == 3
    assert len(filters) == 2


def test_parse_empty_ask():
    ast = parse_query("ASK WHERE { }")
    assert isinstance(ast.head, AskHead) and ast.where == []


def test_optional_is_unsupported():
    with pytest.raises(UnsupportedConstruct):
        parse_query("SELECT DISTINCT ?x0 WHERE { OPTIONAL { ?x0 rdf:type ?t } }")


def test_syntax_error_has_position():
    with pytest.raises(QuerySyntaxError) as err:
        parse_query("SELECT DISTINCT ?x0 WHERE ~ }")
    assert "offset" in str(err.value)


def test_intro_count_matches_brute_force(compiler, kb, intro_result):
    ast = parse_query(intro_result.query_text)
    assert execute(ast, kb).to_json() == naive_execute(ast, kb)
    assert execute(ast, kb).scalar == 3


def test_ask_with_unsatisfiable_values(kb):
    text = ("ASK WHERE { VALUES ?c0 {yago:NoSuchPlace}. "
            "?c0 geosparql:hasGeometry ?c0G . ?c0G geosparql:asWKT ?c0GEOM . }")
    assert execute(parse_query(text), kb).boolean is False


def test_order_by_picks_longest_river(kb):
    text = """
    SELECT DISTINCT ?x0 WHERE {
    ?x0 rdf:type ?x0TYPE;
        geosparql:hasGeometry ?x0G .
    ?x0G geosparql:asWKT ?x0GEOM .
    VALUES ?x0TYPE {geont:OSM_waterway_river} .
    VALUES ?a0 {geont:hasLength}.
    ?x0 ?a0 ?o0.
    }
    ORDER BY DESC (?o0) LIMIT 1.
    """
    ast = parse_query(text)
    res = execute(ast, kb)
    lengths = {}
    for s, p, o in kb.triples:
        if p == "geont:hasLength":
            lengths[s] = float(o)
    best = max(sorted(lengths), key=lambda s: lengths[s])
    assert res.rows == [{"x0": ("uri", best)}]


def test_unbound_variable_raises(kb):
    text = "SELECT DISTINCT ?x9 WHERE { VALUES ?c0 {yago:Oxford}. }"
    with pytest.raises(UnboundVariable):
        execute(parse_query(text), kb)


def test_filter_monotonicity(kb, corpus_entries):
    checked = 0
    for entry in corpus_entries:
        ast = parse_query(entry.query)
        base = execute(ast, kb)
        if base.kind != "rows" or ast.order_by is not None:
            continue
        bound = []
        for c in ast.where:
            if isinstance(c, (ValuesBinding, TypeBinding)) and c.var not in bound:
                bound.append(c.var)
        if len(bound) < 2:
            continue
        extra_filter = DistanceFilter(bound[0], bound[1], "units:meter",
                                      "<", 50)
        extra = QueryAst(ast.head, ast.where + [extra_filter],
                         ast.group_by, ast.having, ast.order_by)
        narrowed = execute(extra, kb)
        assert len(narrowed.rows) <= len(base.rows)
        checked += 1
    assert checked > 5


def test_round_trip_on_corpus_queries(corpus_entries):
    for entry in corpus_entries:
        ast = parse_query(entry.query)
        again = parse_query(serialize_query(ast))
        assert again == ast, entry.id


# --------------------------------------------------------------------------
# randomized oracle equivalence
# --------------------------------------------------------------------------

TYPES = ["geont:T_alpha", "geont:T_beta", "geont:T_gamma"]


def _random_kb(rng):
    kb = KnowledgeBase()
    n = rng.randint(4, 14)
    for i in range(n):
        uri = "yago2geo:E%d" % i
        kb.add_triple(uri, "rdf:type", rng.choice(TYPES))
        kb.add_triple(uri, "rdfs:label", "entity %d" % i)
        if rng.random() < 0.6:
            kb.add_triple(uri, "geont:hasScore",
                          str(rng.randint(0, 100)))
        kind = rng.random()
        if kind < 0.55:
            wkt = "POINT(%g %g)" % (rng.uniform(-3, 3), rng.uniform(-3, 3))
        elif kind < 0.8:
            x, y = rng.uniform(-3, 2), rng.uniform(-3, 2)
            w, h = rng.uniform(0.3, 1.5), rng.uniform(0.3, 1.5)
            wkt = "POLYGON((%g %g, %g %g, %g %g, %g %g, %g %g))" % (
                x, y, x + w, y, x + w, y + h, x, y + h, x, y)
        else:
            pts = [(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(3)]
            wkt = "LINESTRING(%s)" % ", ".join("%g %g" % p for p in pts)
        if rng.random() < 0.9:  # a few entities stay geometry-less
            kb.geometries[uri] = parse_wkt(wkt)
            kb.wkt[uri] = to_wkt(kb.geometries[uri])
    return kb


_SF = ["geof:sfContains", "geof:sfCrosses", "geof:sfIntersects",
       "geof:northOf", "geof:southOf", "geof:eastOf", "geof:westOf"]


def _random_query(rng, kb):
    where = []
    variables = []
    x0_type = rng.sample(TYPES, rng.randint(1, 2))
    where.append(TypeBinding("x0", tuple(x0_type)))
    variables.append("x0")
    if rng.random() < 0.7:
        uris = [s for s in sorted({t[0] for t in kb.triples})]
        chosen = rng.sample(uris, min(len(uris), rng.randint(1, 3)))
        where.append(ValuesBinding("c0", tuple(chosen)))
        where.append(GeometryBinding("c0"))
        variables.append("c0")
    if rng.random() < 0.5 and len(variables) == 2:
        x1_type = rng.sample(TYPES, 1)
        where.append(TypeBinding("x1", tuple(x1_type)))
        variables.append("x1")
    n_filters = rng.randint(0, 2)
    for _ in range(n_filters):
        if len(variables) >= 2:
            a, b = rng.sample(variables, 2)
        else:
            a = b = variables[0]
        if rng.random() < 0.6:
            where.append(SfFilter(rng.choice(_SF), a, b))
        else:
            where.append(DistanceFilter(a, b, "units:kilometer",
                                        rng.choice(["<", ">"]),
                                        rng.randint(10, 400)))
    head_pick = rng.random()
    group_by = having = order_by = None
    if head_pick < 0.3:
        head = AskHead()
    elif head_pick < 0.6:
        head = CountHead("x0")
    else:
        head = SelectHead(("x0",))
        if rng.random() < 0.4 and len(variables) >= 2:
            head = SelectHead(("x0",), count_var=variables[1])
            group_by = GroupBy("x0")
            if rng.random() < 0.5:
                having = Having(rng.choice([">", ">="]), rng.randint(1, 2))
            order_by = OrderBy(rng.choice(["ASC", "DESC"]),
                               "count%s" % variables[1], rng.randint(1, 3))
    return QueryAst(head, where, group_by, having, order_by)


def test_execute_matches_naive_oracle_on_random_cases():
    rng = random.Random(424242)
    for case in range(1000):
        kb = _random_kb(rng)
        ast = _random_query(rng, kb)
        got = execute(ast, kb).to_json()
        expected = naive_execute(ast, kb)
        assert got == expected, "case %d:\n%s" % (case, serialize_query(ast))


def test_random_queries_round_trip():
    rng = random.Random(99)
    for _ in range(200):
        kb = _random_kb(rng)
        ast = _random_query(rng, kb)
        assert parse_query(serialize_query(ast)) == ast
