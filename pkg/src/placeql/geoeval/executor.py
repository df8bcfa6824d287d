"""Executing parsed queries against a knowledge base.

Bindings are enumerated clause by clause (VALUES/type blocks first, property
bindings extend rows, filters prune), then aggregation, ordering, projection
and DISTINCT apply in SPARQL order. Candidate iteration follows knowledge-base
file order, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import UnboundVariable, UnsupportedConstruct, UnsupportedGeometryPair
from ..querygen import (
    AskHead,
    CompareFilter,
    CountHead,
    DistanceFilter,
    DistanceHead,
    ExclusionFilter,
    GeometryBinding,
    OrFilter,
    PropertyBinding,
    QueryAst,
    SelectHead,
    SfFilter,
    TypeBinding,
    ValuesBinding,
)
from . import geometry as geo

_UNIT_NAMES = {
    "units:meter": "meter",
    "units:kilometer": "kilometer",
    "units:mile": "mile",
}

_SF_DISPATCH = {
    "geof:sfContains": geo.sf_contains,
    "geof:sfCrosses": geo.sf_crosses,
    "geof:sfTouches": geo.sf_touches,
    "geof:sfIntersects": geo.sf_intersects,
    "geof:northOf": geo.north_of,
    "geof:southOf": geo.south_of,
    "geof:eastOf": geo.east_of,
    "geof:westOf": geo.west_of,
}


@dataclass
class ResultSet:
    kind: str  # rows | boolean | scalar
    variables: list = field(default_factory=list)
    rows: list = field(default_factory=list)  # dicts var -> ("uri"|"literal", text)
    boolean: bool | None = None
    scalar: object | None = None

    def to_json(self) -> dict:
        if self.kind == "boolean":
            return {"head": {}, "boolean": self.boolean}
        bindings = []
        for row in self.rows:
            binding = {}
            for var in self.variables:
                vtype, value = row[var]
                binding[var] = {"type": vtype, "value": str(value)}
            bindings.append(binding)
        return {"head": {"vars": list(self.variables)},
                "results": {"bindings": bindings}}

    def to_table(self) -> str:
        if self.kind == "boolean":
            return "true" if self.boolean else "false"
        if not self.rows:
            return "(no results)"
        widths = {v: max(len(v), max(len(str(r[v][1])) for r in self.rows))
                  for v in self.variables}
        lines = ["  ".join(v.ljust(widths[v]) for v in self.variables)]
        lines.append("  ".join("-" * widths[v] for v in self.variables))
        for row in self.rows:
            lines.append("  ".join(str(row[v][1]).ljust(widths[v])
                                   for v in self.variables))
        return "\n".join(lines)


def _format_value(value) -> str:
    if isinstance(value, float):
        value = round(value, 3)
        if value.is_integer():
            return str(int(value))
        return repr(value)
    return str(value)


def _numeric(text):
    try:
        return float(text)
    except (TypeError, ValueError):
        return None


class _Executor:
    def __init__(self, ast: QueryAst, kb):
        self.ast = ast
        self.kb = kb
        self._groups = []

    def run(self) -> ResultSet:
        rows = [dict()]
        for clause in self.ast.where:
            rows = self._apply(clause, rows)
        rows = self._aggregate(rows)
        return self._project(rows)

    # -- clause application -------------------------------------------------

    def _apply(self, clause, rows):
        if isinstance(clause, ValuesBinding):
            return self._bind(rows, clause.var, list(clause.uris))
        if isinstance(clause, TypeBinding):
            # knowledge-base file order is the canonical candidate order
            candidates = []
            for s, p, o in self.kb.triples:
                if p == "rdf:type" and o in clause.uris and \
                        s not in candidates and s in self.kb.geometries:
                    candidates.append(s)
            return self._bind(rows, clause.var, candidates)
        if isinstance(clause, GeometryBinding):
            return [r for r in rows
                    if self._uri(r, clause.var) in self.kb.geometries]
        if isinstance(clause, PropertyBinding):
            out = []
            for row in rows:
                subject = self._uri(row, clause.subject_var)
                for attr_uri in clause.uris:
                    for value in self.kb.objects(subject, attr_uri):
                        new = dict(row)
                        new[clause.value_var] = ("literal", value)
                        out.append(new)
            return out
        if isinstance(clause, (SfFilter, DistanceFilter)):
            return [r for r in rows if self._condition(clause, r)]
        if isinstance(clause, OrFilter):
            return [r for r in rows
                    if any(self._condition(c, r) for c in clause.conditions)]
        if isinstance(clause, ExclusionFilter):
            return [r for r in rows
                    if all(self._uri(r, clause.var) != uri
                           for uri in clause.uris)]
        if isinstance(clause, CompareFilter):
            out = []
            for row in rows:
                value = _numeric(self._value(row, clause.var))
                if value is not None and _compare(value, clause.op,
                                                  clause.value):
                    out.append(row)
            return out
        raise UnsupportedConstruct("cannot execute clause %r" % (clause,))

    def _bind(self, rows, var, candidates):
        out = []
        for row in rows:
            if var in row:
                if row[var][1] in candidates:
                    out.append(row)
                continue
            for uri in candidates:
                new = dict(row)
                new[var] = ("uri", uri)
                out.append(new)
        return out

    def _uri(self, row, var):
        if var not in row:
            raise UnboundVariable("?%s is not bound" % var)
        return row[var][1]

    def _value(self, row, var):
        if var not in row:
            raise UnboundVariable("?%s is not bound" % var)
        return row[var][1]

    def _geometry(self, row, var):
        uri = self._uri(row, var)
        geom = self.kb.geometries.get(uri)
        if geom is None:
            raise UnboundVariable("no geometry for %s" % uri)
        return geom

    def _condition(self, cond, row) -> bool:
        if isinstance(cond, SfFilter):
            fn = _SF_DISPATCH[cond.function]
            try:
                return fn(self._geometry(row, cond.var_a),
                          self._geometry(row, cond.var_b))
            except UnsupportedGeometryPair:
                return False  # an erroring FILTER eliminates the solution
        unit = _UNIT_NAMES.get(cond.unit)
        if unit is None:
            raise UnsupportedConstruct("unknown unit URI %s" % cond.unit)
        d = geo.distance(self._geometry(row, cond.var_a),
                         self._geometry(row, cond.var_b), unit)
        return _compare(d, cond.op, cond.value)

    # -- aggregation / projection --------------------------------------------

    def _aggregate(self, rows):
        ast = self.ast
        if ast.group_by is None:
            if ast.having is not None:
                raise UnsupportedConstruct("HAVING requires GROUP BY")
            return rows
        groups = {}
        order = []
        for row in rows:
            key = self._value(row, ast.group_by.var)
            if key not in groups:
                groups[key] = []
                order.append(key)
            groups[key].append(row)
        kept = []
        for key in order:
            group = groups[key]
            if ast.having is not None and \
                    not _compare(len(group), ast.having.op, ast.having.value):
                continue
            kept.append((key, group))
        self._groups = kept
        return [g[0] for _, g in kept]  # representative row per group

    def _project(self, rows) -> ResultSet:
        ast = self.ast
        head = ast.head
        if isinstance(head, AskHead):
            return ResultSet("boolean", boolean=bool(rows))
        if isinstance(head, CountHead):
            distinct = []
            for row in rows:
                value = self._value(row, head.variable)
                if value not in distinct:
                    distinct.append(value)
            alias = "count%s" % head.variable
            count = len(distinct)
            return ResultSet("scalar", [alias],
                             [{alias: ("literal", str(count))}], scalar=count)
        if isinstance(head, DistanceHead):
            unit = _UNIT_NAMES.get(head.unit)
            if unit is None:
                raise UnsupportedConstruct("unknown unit URI %s" % head.unit)
            out = []
            for row in rows:
                d = geo.distance(self._geometry(row, head.var_a),
                                 self._geometry(row, head.var_b), unit)
                value = {head.alias: ("literal", _format_value(d))}
                if value not in out:
                    out.append(value)
            return ResultSet("rows", [head.alias], out)

        variables = list(head.variables)
        count_alias = None
        if head.count_var is not None:
            count_alias = "count%s" % head.count_var
            variables.append(count_alias)

        projected = []
        if ast.group_by is not None and count_alias is not None:
            for key, group in self._groups:
                row = dict(group[0])
                distinct = []
                for member in group:
                    value = self._value(member, head.count_var)
                    if value not in distinct:
                        distinct.append(value)
                row[count_alias] = ("literal", str(len(distinct)))
                projected.append(row)
        else:
            projected = rows
        projected = self._order(projected)
        out = []
        for row in projected:
            item = {}
            for var in variables:
                item[var] = self._resolve(row, var)
            if item not in out:
                out.append(item)
        if ast.order_by is not None:
            out = out[:ast.order_by.limit]
        return ResultSet("rows", variables, out)

    def _resolve(self, row, var):
        if var in row:
            return row[var]
        if var.endswith("GEOM"):
            base = var[:-4]
            uri = self._uri(row, base)
            wkt = self.kb.wkt.get(uri)
            if wkt is None:
                raise UnboundVariable("no geometry literal for %s" % uri)
            return ("literal", wkt)
        raise UnboundVariable("?%s is not bound" % var)

    def _order(self, rows):
        ast = self.ast
        if ast.order_by is None:
            return rows
        var = ast.order_by.var

        def key(row):
            value = self._value(row, var) if var in row else \
                self._resolve(row, var)[1]
            number = _numeric(value)
            return (0, number) if number is not None else (1, str(value))

        ordered = sorted(rows, key=key,
                         reverse=(ast.order_by.direction == "DESC"))
        return ordered


def _compare(left, op, right) -> bool:
    if op == "<":
        return left < right
    if op == ">":
        return left > right
    if op == "<=":
        return left <= right
    if op == ">=":
        return left >= right
    if op == "=":
        return left == right
    raise UnsupportedConstruct("unknown comparison operator %r" % op)


def execute(ast: QueryAst, kb) -> ResultSet:
    """Evaluate a query AST; read-only over the knowledge base."""
    return _Executor(ast, kb).run()
