"""Parser for the GeoSPARQL subset the generator emits.

The grammar covers exactly the template language: a fixed prefix block,
ASK/SELECT heads (plain variables, COUNT aliases, a geof:distance select
expression), WHERE clauses built from VALUES/type/geometry/attribute
patterns and FILTERs, plus GROUP BY/HAVING/ORDER BY/LIMIT tails.
Anything else (OPTIONAL, UNION, property paths, ...) raises
UnsupportedConstruct.
"""

from __future__ import annotations

import re

from ..errors import QuerySyntaxError, UnsupportedConstruct
from ..querygen import (
    AskHead,
    CompareFilter,
    CountHead,
    DistanceFilter,
    DistanceHead,
    ExclusionFilter,
    GeometryBinding,
    GroupBy,
    Having,
    OrderBy,
    OrFilter,
    PropertyBinding,
    QueryAst,
    SelectHead,
    SfFilter,
    TypeBinding,
    ValuesBinding,
)

_OUT_OF_SUBSET = {
    "OPTIONAL", "UNION", "SERVICE", "MINUS", "EXISTS", "GRAPH",
    "CONSTRUCT", "DESCRIBE", "INSERT", "DELETE", "BIND",
}

_TOKEN_RE = re.compile(r"""
    (?P<IRI><[^<>\s]+>)
  | (?P<VAR>\?\w+)
  | (?P<NUM>\d+(?:\.\d+)?)
  | (?P<NAME>[A-Za-z_][\w-]*(?::[\w/#.-]*)?)
  | (?P<OP>\|\||&&|!=|<=|>=|[{}();,.<>=*])
""", re.X)

_SF_FUNCTIONS = {
    "geof:sfContains", "geof:sfCrosses", "geof:sfTouches", "geof:sfIntersects",
    "geof:northOf", "geof:southOf", "geof:eastOf", "geof:westOf",
}


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.items = []  # (value, kind, position)
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN_RE.match(text, pos)
            if not m:
                raise QuerySyntaxError("unexpected character %r" % text[pos],
                                       position=pos)
            self.items.append((m.group(0), m.lastgroup, pos))
            pos = m.end()
        self.index = 0

    def peek(self, ahead=0):
        i = self.index + ahead
        return self.items[i] if i < len(self.items) else (None, "EOF",
                                                          len(self.text))

    def next(self):
        value, kind, pos = self.peek()
        if kind == "EOF":
            raise QuerySyntaxError("unexpected end of query", position=pos)
        self.index += 1
        return value, kind, pos

    def expect(self, value=None, kind=None):
        got, got_kind, pos = self.next()
        if value is not None and got.upper() != value.upper():
            raise QuerySyntaxError("expected %r, got %r" % (value, got),
                                   position=pos)
        if kind is not None and got_kind != kind:
            raise QuerySyntaxError("expected %s token, got %r" % (kind, got),
                                   position=pos)
        return got

    def accept(self, value):
        got, kind, _ = self.peek()
        if got is not None and got.upper() == value.upper():
            self.next()
            return True
        return False

    def at_keyword(self, word):
        got, kind, _ = self.peek()
        return kind == "NAME" and got is not None and \
            ":" not in got and got.upper() == word.upper()


def _var(name: str) -> str:
    return name[1:]  # strip "?"


def parse_query(text: str) -> QueryAst:
    """Parse query text; the inverse of serialize_query on generated queries."""
    toks = _Tokens(text)
    for value, kind, pos in toks.items:
        if kind == "NAME" and ":" not in value and \
                value.upper() in _OUT_OF_SUBSET:
            raise UnsupportedConstruct("%s is outside the supported subset"
                                       % value.upper())
    while toks.at_keyword("PREFIX"):
        toks.next()
        toks.expect(kind="NAME")
        toks.expect(kind="IRI")
    head = _parse_head(toks)
    where = _parse_where(toks)
    group_by = having = order_by = None
    while toks.peek()[1] != "EOF":
        if toks.at_keyword("GROUP"):
            toks.next()
            toks.expect("BY")
            group_by = GroupBy(_var(toks.expect(kind="VAR")))
        elif toks.at_keyword("HAVING"):
            toks.next()
            toks.expect("(")
            toks.expect("COUNT")
            toks.expect("(")
            toks.expect("*")
            toks.expect(")")
            op = toks.expect(kind="OP")
            value = _number(toks.expect(kind="NUM"))
            toks.expect(")")
            having = Having(op, value)
        elif toks.at_keyword("ORDER"):
            toks.next()
            toks.expect("BY")
            direction = toks.expect(kind="NAME").upper()
            if direction not in ("ASC", "DESC"):
                raise QuerySyntaxError("expected ASC or DESC, got %r"
                                       % direction)
            toks.expect("(")
            var = _var(toks.expect(kind="VAR"))
            toks.expect(")")
            toks.expect("LIMIT")
            limit = int(_number(toks.expect(kind="NUM")))
            toks.accept(".")
            order_by = OrderBy(direction, var, limit)
        else:
            value, _, pos = toks.peek()
            raise QuerySyntaxError("unexpected trailing token %r" % value,
                                   position=pos)
    return QueryAst(head, where, group_by, having, order_by)


def _number(text: str):
    value = float(text)
    return int(value) if value.is_integer() else value


def _parse_head(toks: _Tokens):
    if toks.accept("ASK"):
        return AskHead()
    toks.expect("SELECT")
    toks.accept("DISTINCT")
    variables = []
    count_var = None
    distance_head = None
    while not toks.at_keyword("WHERE"):
        value, kind, pos = toks.peek()
        if kind == "VAR":
            variables.append(_var(toks.next()[0]))
        elif value == "(":
            toks.next()
            if toks.at_keyword("COUNT"):
                toks.next()
                toks.expect("(")
                toks.expect("DISTINCT")
                var = _var(toks.expect(kind="VAR"))
                toks.expect(")")
                toks.expect("AS")
                toks.expect(kind="VAR")
                toks.expect(")")
                count_var = var
            elif toks.peek()[0] == "geof:distance":
                toks.next()
                toks.expect("(")
                var_a = _strip_geom(_var(toks.expect(kind="VAR")))
                toks.expect(",")
                var_b = _strip_geom(_var(toks.expect(kind="VAR")))
                toks.expect(",")
                unit = toks.expect(kind="NAME")
                toks.expect(")")
                toks.expect("AS")
                alias = _var(toks.expect(kind="VAR"))
                toks.expect(")")
                distance_head = DistanceHead(var_a, var_b, unit, alias)
            else:
                raise QuerySyntaxError("unsupported select expression",
                                       position=pos)
        else:
            raise QuerySyntaxError("unexpected token %r in select head" % value,
                                   position=pos)
    if distance_head is not None:
        return distance_head
    if count_var is not None and not variables:
        return CountHead(count_var)
    if not variables:
        raise QuerySyntaxError("empty select head")
    return SelectHead(tuple(variables), count_var=count_var)


def _strip_geom(var: str) -> str:
    if var.endswith("GEOM"):
        return var[:-4]
    return var


def _parse_where(toks: _Tokens) -> list:
    toks.expect("WHERE")
    toks.expect("{")
    raw = []  # (kind, payload) in text order
    while True:
        value, kind, pos = toks.peek()
        if value == "}":
            toks.next()
            break
        if toks.at_keyword("VALUES"):
            toks.next()
            var = _var(toks.expect(kind="VAR"))
            toks.expect("{")
            uris = []
            while toks.peek()[0] != "}":
                uris.append(toks.expect(kind="NAME"))
            toks.expect("}")
            toks.accept(".")
            raw.append(("values", (var, tuple(uris))))
        elif toks.at_keyword("FILTER"):
            toks.next()
            raw.append(("filter", _parse_filter(toks)))
        elif kind == "VAR":
            raw.append(("triples", _parse_triple_chain(toks)))
        else:
            raise QuerySyntaxError("unexpected token %r in WHERE" % value,
                                   position=pos)
    return _assemble_clauses(raw)


def _parse_triple_chain(toks: _Tokens) -> list:
    """One subject with ';'-chained predicates, ending in '.'."""
    subject = _var(toks.expect(kind="VAR"))
    triples = []
    while True:
        pred_value, pred_kind, pos = toks.next()
        if pred_kind == "VAR":
            pred = ("var", _var(pred_value))
        elif pred_kind == "NAME":
            pred = ("uri", pred_value)
        else:
            raise QuerySyntaxError("bad predicate %r" % pred_value, position=pos)
        obj_value, obj_kind, pos = toks.next()
        if obj_kind == "VAR":
            obj = ("var", _var(obj_value))
        elif obj_kind in ("NAME", "NUM", "IRI"):
            obj = ("uri", obj_value)
        else:
            raise QuerySyntaxError("bad object %r" % obj_value, position=pos)
        triples.append((subject, pred, obj))
        sep, _, pos = toks.next()
        if sep == ";":
            continue
        if sep == ".":
            break
        raise QuerySyntaxError("expected ';' or '.', got %r" % sep,
                               position=pos)
    return triples


def _parse_filter(toks: _Tokens):
    toks.expect("(")
    conditions = []
    exclusions = []
    compare = None
    while True:
        value, kind, pos = toks.peek()
        if kind == "NAME" and value in _SF_FUNCTIONS:
            toks.next()
            toks.expect("(")
            var_a = _strip_geom(_var(toks.expect(kind="VAR")))
            toks.expect(",")
            var_b = _strip_geom(_var(toks.expect(kind="VAR")))
            toks.expect(")")
            conditions.append(SfFilter(value, var_a, var_b))
        elif value == "geof:distance":
            toks.next()
            toks.expect("(")
            var_a = _strip_geom(_var(toks.expect(kind="VAR")))
            toks.expect(",")
            var_b = _strip_geom(_var(toks.expect(kind="VAR")))
            toks.expect(",")
            unit = toks.expect(kind="NAME")
            toks.expect(")")
            op = toks.expect(kind="OP")
            number = _number(toks.expect(kind="NUM"))
            conditions.append(DistanceFilter(var_a, var_b, unit, op, number))
        elif kind == "VAR":
            var = _var(toks.next()[0])
            op, _, pos = toks.next()
            if op == "!=":
                uri = toks.expect(kind="NAME")
                exclusions.append((var, uri))
            elif op in ("<", ">", "=", "<=", ">="):
                number = _number(toks.expect(kind="NUM"))
                compare = CompareFilter(var, op, number)
            else:
                raise QuerySyntaxError("bad filter operator %r" % op,
                                       position=pos)
        else:
            raise QuerySyntaxError("unsupported filter condition at %r" % value,
                                   position=pos)
        sep, _, _ = toks.peek()
        if sep in ("||", "&&"):
            toks.next()
            continue
        break
    toks.expect(")")
    toks.accept(".")
    if exclusions:
        var = exclusions[0][0]
        return ExclusionFilter(var, tuple(u for _, u in exclusions))
    if compare is not None:
        return compare
    if len(conditions) == 1:
        return conditions[0]
    return OrFilter(tuple(conditions))


def _assemble_clauses(raw: list) -> list:
    """Stitch raw VALUES/triple/filter items into structured clauses."""
    type_values = {}   # var -> uris (VALUES ?xTYPE {...})
    attr_values = {}   # attr var -> uris
    plain_values = []  # (index, var, uris)
    triples_by_index = []
    filters = []
    for index, (kind, payload) in enumerate(raw):
        if kind == "values":
            var, uris = payload
            if var.endswith("TYPE"):
                type_values[var[:-4]] = uris
            else:
                plain_values.append((index, var, uris))
        elif kind == "triples":
            triples_by_index.append((index, payload))
        else:
            filters.append((index, payload))

    # attribute bindings: VALUES var used as a predicate somewhere
    predicate_triples = {}
    for index, triples in triples_by_index:
        for (s, pred, obj) in triples:
            if pred[0] == "var":
                predicate_triples[pred[1]] = (index, s, obj)
    remaining_values = []
    for index, var, uris in plain_values:
        if var in predicate_triples:
            attr_values[var] = (index, uris)
        else:
            remaining_values.append((index, var, uris))

    has_type = {}
    has_geometry = set()
    for index, triples in triples_by_index:
        for (s, pred, obj) in triples:
            if pred == ("uri", "rdf:type"):
                has_type[s] = index
            if pred == ("uri", "geosparql:hasGeometry"):
                has_geometry.add((s, index))

    clauses = []  # (sort index, clause)
    for var, index in has_type.items():
        uris = type_values.get(var)
        if uris is None:
            raise QuerySyntaxError("rdf:type pattern for ?%s lacks a VALUES block"
                                   % var)
        clauses.append((index, TypeBinding(var, uris)))
    for index, var, uris in remaining_values:
        clauses.append((index, ValuesBinding(var, uris)))
    for (var, index) in sorted(has_geometry, key=lambda t: t[1]):
        if var in has_type:
            continue  # the type binding template includes the geometry lines
        clauses.append((index + 0.5, GeometryBinding(var)))
    for attr_var, (index, uris) in attr_values.items():
        tri_index, subject, obj = predicate_triples[attr_var]
        if obj[0] != "var":
            raise QuerySyntaxError("attribute object must be a variable")
        clauses.append((index, PropertyBinding(attr_var, uris, subject,
                                               obj[1])))
    for index, clause in filters:
        clauses.append((index, clause))
    clauses.sort(key=lambda t: t[0])
    return [c for _, c in clauses]
