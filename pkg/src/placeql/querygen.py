"""Dynamic GeoSPARQL generation from logical statements.

Each concept and relation contributes a clause instantiated from a fixed
template: name-based concepts get a VALUES block plus geometry bindings,
type-based concepts a type block, properties an attribute binding, spatial
relations a FILTER from the relation table, and aggregation/sorting append
GROUP BY/HAVING and ORDER BY/LIMIT tails. Constants are numbered ?c0, ?c1,
... in order of first mention; logical variables keep their x-names.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from . import morph
from .errors import MissingMapping, UnknownUnit, UnsupportedRelation
from .logical import Declaration, FunctionApp, Group, LogicalStatement, Term
from .parsetree import Measure

PREFIXES = (
    ("geosparql", "http://www.opengis.net/ont/geosparql#"),
    ("geof", "http://www.opengis.net/def/function/geosparql/"),
    ("units", "http://www.opengis.net/def/uom/OGC/1.0/"),
    ("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"),
    ("yago", "http://yago-knowledge.org/resource/"),
    ("geont", "http://kr.di.uoa.gr/yago2geo/ontology/"),
    ("yago2geo", "http://kr.di.uoa.gr/yago2geo/resource/"),
)

UNIT_URIS = {
    "meter": "units:meter",
    "metre": "units:meter",
    "kilometer": "units:kilometer",
    "kilometre": "units:kilometer",
    "km": "units:kilometer",
    "mile": "units:mile",
}

SF_FUNCTIONS = {
    "contains": "geof:sfContains",
    "crosses": "geof:sfCrosses",
    "touches": "geof:sfTouches",
    "intersects": "geof:sfIntersects",
    "north": "geof:northOf",
    "south": "geof:southOf",
    "east": "geof:eastOf",
    "west": "geof:westOf",
}


def unit_uri(word: str) -> str:
    unit = morph.singularize(word.lower())
    if unit not in UNIT_URIS:
        raise UnknownUnit("no OGC unit URI for %r" % word)
    return UNIT_URIS[unit]


# --------------------------------------------------------------------------
# relation table
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RelationRule:
    symbol: str
    kind: str        # contains | crosses | touches | within_distance | near |
                     # north | south | east | west | attribute
    arg_order: str   # "ab" (locatum, relatum) or "ba" (swapped)
    default_value: float | None = None
    default_unit: str | None = None


class SpatialRelationTable:
    """Maps normalized relation symbols to filter templates."""

    def __init__(self, rules):
        self.rules = {r.symbol: r for r in rules}

    def lookup(self, symbol: str) -> RelationRule:
        rule = self.rules.get(symbol)
        if rule is None:
            raise UnsupportedRelation("no relation table entry for %s" % symbol)
        return rule

    def __contains__(self, symbol: str) -> bool:
        return symbol in self.rules

    @classmethod
    def load(cls, path) -> "SpatialRelationTable":
        rules = []
        for raw in Path(path).read_text(encoding="utf-8").splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            symbol, kind, arg_order = fields[0], fields[1], fields[2]
            value = unit = None
            if len(fields) > 3 and fields[3].strip():
                value_text, unit = fields[3].split()
                value = float(value_text)
                value = int(value) if value.is_integer() else value
            rules.append(RelationRule(symbol, kind, arg_order, value, unit))
        return cls(rules)


# --------------------------------------------------------------------------
# query AST
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class AskHead:
    pass


@dataclass(frozen=True)
class SelectHead:
    variables: tuple
    count_var: str | None = None  # adds (COUNT(distinct ?v) as ?countv)


@dataclass(frozen=True)
class CountHead:
    variable: str


@dataclass(frozen=True)
class DistanceHead:
    var_a: str
    var_b: str
    unit: str = "units:meter"
    alias: str = "distance"


@dataclass(frozen=True)
class ValuesBinding:
    var: str
    uris: tuple


@dataclass(frozen=True)
class GeometryBinding:
    var: str


@dataclass(frozen=True)
class TypeBinding:
    var: str
    uris: tuple


@dataclass(frozen=True)
class PropertyBinding:
    attr_var: str
    uris: tuple
    subject_var: str
    value_var: str


@dataclass(frozen=True)
class DistanceFilter:
    var_a: str
    var_b: str
    unit: str
    op: str
    value: object


@dataclass(frozen=True)
class SfFilter:
    function: str  # geof:sfContains etc.
    var_a: str
    var_b: str


@dataclass(frozen=True)
class OrFilter:
    conditions: tuple  # DistanceFilter | SfFilter entries


@dataclass(frozen=True)
class ExclusionFilter:
    var: str
    uris: tuple


@dataclass(frozen=True)
class CompareFilter:
    var: str
    op: str
    value: object


@dataclass(frozen=True)
class GroupBy:
    var: str


@dataclass(frozen=True)
class Having:
    op: str
    value: object


@dataclass(frozen=True)
class OrderBy:
    direction: str  # ASC | DESC
    var: str
    limit: int


@dataclass
class QueryAst:
    head: object
    where: list
    group_by: GroupBy | None = None
    having: Having | None = None
    order_by: OrderBy | None = None


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------

def _format_number(value) -> str:
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return str(value)


def _render_condition(clause) -> str:
    if isinstance(clause, DistanceFilter):
        return "geof:distance(?%sGEOM, ?%sGEOM, %s) %s %s" % (
            clause.var_a, clause.var_b, clause.unit, clause.op,
            _format_number(clause.value))
    if isinstance(clause, SfFilter):
        return "%s(?%sGEOM, ?%sGEOM)" % (clause.function, clause.var_a,
                                         clause.var_b)
    raise TypeError("not a filter condition: %r" % (clause,))


def render_clause(clause) -> str:
    if isinstance(clause, ValuesBinding):
        return "VALUES ?%s {%s}." % (clause.var, " ".join(clause.uris))
    if isinstance(clause, GeometryBinding):
        v = clause.var
        return "?%s geosparql:hasGeometry ?%sG .\n?%sG geosparql:asWKT ?%sGEOM ." \
            % (v, v, v, v)
    if isinstance(clause, TypeBinding):
        v = clause.var
        return ("?%s rdf:type ?%sTYPE;\n    geosparql:hasGeometry ?%sG .\n"
                "?%sG geosparql:asWKT ?%sGEOM .\nVALUES ?%sTYPE {%s} ."
                % (v, v, v, v, v, v, " ".join(clause.uris)))
    if isinstance(clause, PropertyBinding):
        return "VALUES ?%s {%s}.\n?%s ?%s ?%s." % (
            clause.attr_var, " ".join(clause.uris), clause.subject_var,
            clause.attr_var, clause.value_var)
    if isinstance(clause, DistanceFilter):
        return "FILTER(%s)." % _render_condition(clause)
    if isinstance(clause, SfFilter):
        return "FILTER (%s)." % _render_condition(clause)
    if isinstance(clause, OrFilter):
        return "FILTER (%s)." % " || ".join(_render_condition(c)
                                            for c in clause.conditions)
    if isinstance(clause, ExclusionFilter):
        cond = " && ".join("?%s != %s" % (clause.var, uri)
                           for uri in clause.uris)
        return "FILTER (%s)." % cond
    if isinstance(clause, CompareFilter):
        return "FILTER (?%s %s %s)." % (clause.var, clause.op,
                                        _format_number(clause.value))
    raise TypeError("unknown clause: %r" % (clause,))


def _render_head(head) -> str:
    if isinstance(head, AskHead):
        return "ASK"
    if isinstance(head, CountHead):
        v = head.variable
        return "SELECT DISTINCT (COUNT(distinct ?%s) as ?count%s)" % (v, v)
    if isinstance(head, DistanceHead):
        return "SELECT DISTINCT (geof:distance(?%sGEOM, ?%sGEOM, %s) as ?%s)" \
            % (head.var_a, head.var_b, head.unit, head.alias)
    parts = ["?%s" % v for v in head.variables]
    if head.count_var is not None:
        parts.append("(COUNT(distinct ?%s) as ?count%s)"
                     % (head.count_var, head.count_var))
    return "SELECT DISTINCT %s" % " ".join(parts)


def serialize_query(ast: QueryAst) -> str:
    lines = ["PREFIX %s: <%s>" % (name, uri) for name, uri in PREFIXES]
    lines.append(_render_head(ast.head))
    lines.append("WHERE {")
    for clause in ast.where:
        lines.append(render_clause(clause))
    lines.append("}")
    if ast.group_by is not None:
        lines.append("GROUP BY ?%s" % ast.group_by.var)
    if ast.having is not None:
        lines.append("HAVING (COUNT(*) %s %s)" % (ast.having.op,
                                                  _format_number(ast.having.value)))
    if ast.order_by is not None:
        lines.append("ORDER BY %s (?%s) LIMIT %d." % (
            ast.order_by.direction, ast.order_by.var, ast.order_by.limit))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# generation
# --------------------------------------------------------------------------

@dataclass
class Mappings:
    """Resolved URIs per logical term name plus per property label."""

    terms: dict = field(default_factory=dict)       # term name -> [uri]
    properties: dict = field(default_factory=dict)  # property label -> [uri]


class _Generator:
    def __init__(self, stmt, mappings, table, qualities):
        self.stmt = stmt
        self.mappings = mappings
        self.table = table
        self.qualities = qualities  # lexicon quality table (lemma -> QualityEntry)
        self.where = []
        self.cvars = {}
        self.bound = set()
        self.consumed_apps = set()
        self.attr_count = 0
        self.value_count = 0
        self.group_by = None
        self.having = None
        self.order_by = None
        self.count_var = None

    def generate(self) -> QueryAst:
        self._assign_constant_vars()
        self._build_chain_substitution()
        pending = self._property_subjects()
        for item in self.stmt.body:
            self._emit_item(item, pending)
        head = self._head()
        ast = QueryAst(head, self.where, self.group_by, self.having,
                       self.order_by)
        _check_bound_vars(ast)
        return ast

    def _build_chain_substitution(self):
        """Nested location chains constrain the original locatum.

        For IN_RADIUS_OF(x0, High Street, ...) followed by IN(High Street,
        Oxford), the second filter is emitted against ?x0, not against the
        High Street candidates: execution then resolves which High Street
        was meant.
        """
        self.chain_subst = {}
        for _ in range(2):  # fixpoint for transitive chains
            for app in self.stmt.functions():
                if app.category not in ("spatial", "temporal"):
                    continue
                terms = [a for a in app.args if isinstance(a, Term)]
                if len(terms) < 2:
                    continue
                locatum, relatum = terms[0], terms[1]
                while locatum.kind == "constant" and \
                        locatum.name in self.chain_subst:
                    locatum = self.chain_subst[locatum.name]
                if locatum.kind == "variable" and relatum.kind == "constant":
                    self.chain_subst.setdefault(relatum.name, locatum)

    def _resolve_locatum(self, term: Term) -> Term:
        seen = set()
        while term.kind == "constant" and term.name in self.chain_subst and \
                term.name not in seen:
            seen.add(term.name)
            term = self.chain_subst[term.name]
        return term

    # -- bookkeeping --------------------------------------------------------

    def _exclusion_only(self, name) -> bool:
        used_positive = False
        for app in self.stmt.functions():
            for arg in app.args:
                if isinstance(arg, Term) and arg.name == name:
                    if not (app.category == "identity"
                            and app.polarity == "negated"):
                        used_positive = True
        for term in self.stmt.head_args:
            if term.name == name:
                used_positive = True
        return not used_positive

    def _assign_constant_vars(self):
        for decl in self.stmt.declarations():
            term = decl.term
            if term.kind != "constant" or term.name in self.cvars:
                continue
            if self._exclusion_only(term.name):
                self.cvars[term.name] = None  # no VALUES block, filter-only
            else:
                self.cvars[term.name] = "c%d" % sum(
                    1 for v in self.cvars.values() if v is not None)

    def qvar(self, term: Term) -> str:
        if term.kind == "variable":
            return term.name
        var = self.cvars.get(term.name)
        if var is None:
            raise MissingMapping("constant %r has no query variable" % term.name)
        return var

    def _uris(self, key, kind="term"):
        source = self.mappings.terms if kind == "term" else \
            self.mappings.properties
        uris = source.get(key)
        if not uris:
            raise MissingMapping("no %s mapping for %r" % (kind, key))
        return tuple(uris)

    def _property_subjects(self):
        """Map property-variable name -> (subject term, consuming app)."""
        pending = {}
        for app in self.stmt.functions():
            if len(app.args) != 2:
                continue
            a, b = app.args
            if isinstance(b, Term) and b.kind == "variable" and \
                    b.concept == "property" and isinstance(a, Term):
                pending[b.name] = (a, id(app))
            elif isinstance(a, Term) and a.kind == "variable" and \
                    a.concept == "property" and isinstance(b, Term) and \
                    app.category in ("spatial", "temporal"):
                # OF(x0, Scotland): property locatum, place relatum
                pending[a.name] = (b, id(app))
        return pending

    # -- emission -------------------------------------------------------------

    def _emit_item(self, item, pending):
        if isinstance(item, Declaration):
            self._emit_declaration(item, pending, group=None)
        elif isinstance(item, Group):
            if all(isinstance(i, Declaration) for i in item.items):
                self._emit_type_group(item)
            else:
                self._emit_or_filters(item)
        elif isinstance(item, FunctionApp):
            self._emit_function(item, pending)

    def _emit_declaration(self, decl, pending, group):
        term = decl.term
        if term.kind == "constant":
            var = self.cvars.get(term.name)
            if var is None or var in self.bound:
                return
            self.where.append(ValuesBinding(var, self._uris(term.name)))
            self.where.append(GeometryBinding(var))
            self.bound.add(var)
            return
        if term.name in self.bound:
            return
        if term.concept == "property":
            if term.name not in pending:
                raise MissingMapping(
                    "property variable %s is not attached to any concept"
                    % term.name)
            subject, app_id = pending[term.name]
            self.consumed_apps.add(app_id)
            attr = "a%d" % self.attr_count
            self.attr_count += 1
            self.where.append(PropertyBinding(
                attr, self._uris(term.name), self.qvar(subject), term.name))
            self.bound.add(term.name)
            return
        self.where.append(TypeBinding(term.name, self._uris(term.name)))
        self.bound.add(term.name)

    def _emit_type_group(self, group):
        # or/and over same-class type declarations: one variable, one VALUES
        # block with the union of the mapped URIs (VALUES is a union)
        term = group.items[0].term
        if term.name in self.bound:
            return
        uris = []
        for decl in group.items:
            for uri in self._uris(term.name + ":" + decl.predicate):
                if uri not in uris:
                    uris.append(uri)
        self.where.append(TypeBinding(term.name, tuple(uris)))
        self.bound.add(term.name)

    def _emit_or_filters(self, group):
        conditions = []
        for item in group.items:
            if not isinstance(item, FunctionApp):
                raise UnsupportedRelation("cannot disjoin %r" % (item,))
            clause = self._filter_for(item)
            if not isinstance(clause, (SfFilter, DistanceFilter)):
                raise UnsupportedRelation(
                    "only spatial filters can be disjoined, got %r" % (clause,))
            conditions.append(clause)
        self.where.append(OrFilter(tuple(conditions)))

    def _emit_function(self, app, pending):
        if id(app) in self.consumed_apps:
            return
        if app.category == "identity":
            if app.polarity != "negated":
                raise UnsupportedRelation("positive EQUALS is not emitted")
            subject, excluded = app.args
            self.where.append(ExclusionFilter(self.qvar(subject),
                                              self._uris(excluded.name)))
            return
        if app.category == "comparison":
            self._emit_comparison(app)
            return
        if app.category == "quality":
            self._emit_quality(app)
            return
        clause = self._filter_for(app)
        self.where.append(clause)

    def _filter_for(self, app):
        rule = self.table.lookup(app.name)
        terms = [a for a in app.args if isinstance(a, Term)]
        measure = next((a for a in app.args if isinstance(a, Measure)), None)
        if len(terms) < 2:
            raise UnsupportedRelation("relation %s needs two concept arguments"
                                      % app.name)
        locatum = self._resolve_locatum(terms[0])
        a, b = self.qvar(locatum), self.qvar(terms[1])
        if rule.arg_order == "ba":
            a, b = b, a
        if rule.kind == "within_distance":
            if measure is None:
                raise UnsupportedRelation("%s needs a distance measure" % app.name)
            return DistanceFilter(a, b, unit_uri(measure.unit), "<",
                                  measure.value)
        if rule.kind == "near":
            return DistanceFilter(a, b, unit_uri(rule.default_unit), "<",
                                  rule.default_value)
        if rule.kind in SF_FUNCTIONS:
            return SfFilter(SF_FUNCTIONS[rule.kind], a, b)
        raise UnsupportedRelation("relation kind %r is not executable"
                                  % rule.kind)

    def _emit_comparison(self, app):
        source, target = app.args
        if not isinstance(target, Measure):
            raise UnsupportedRelation(
                "comparison target must be a measure, got %r" % (target,))
        op = app.name if app.name in ("<", ">", "=", "<=", ">=") else None
        if isinstance(source, Term) and source.kind == "variable" and \
                source.concept == "property":
            self.where.append(CompareFilter(source.name, op or ">",
                                            target.value))
            return
        if target.unit_ref is not None and target.unit_ref.cls.value in "pe":
            # counting comparison: GROUP BY the source, HAVING on the count
            if op is None:
                raise UnsupportedRelation("comparison %s has no operator"
                                          % app.name)
            self.group_by = GroupBy(self.qvar(source))
            self.having = Having(op, target.value)
            return
        # property-bearing comparison (HIGHER_THAN ...): bind the implied
        # property and filter on its value, converted to the base unit
        prop_label = app.property_label or self._comparison_property(app.name)
        attr = "a%d" % self.attr_count
        self.attr_count += 1
        value_var = "o%d" % self.value_count
        self.value_count += 1
        self.where.append(PropertyBinding(attr, self._uris(prop_label, "property"),
                                          self.qvar(source), value_var))
        self.where.append(CompareFilter(value_var, op or ">", target.value))

    def _comparison_property(self, symbol):
        word = symbol.split("_")[0].lower()
        entry = self.qualities.get(word)
        if entry is None or not entry.property_label or \
                entry.property_label == "count":
            raise UnsupportedRelation("comparison %s implies no property" % symbol)
        return entry.property_label

    def _emit_quality(self, app):
        lemma = app.name.lower()
        entry = self.qualities.get(lemma)
        if entry is None:
            raise UnsupportedRelation("quality %r is not in the quality table"
                                      % lemma)
        term = app.args[0]
        direction = "DESC" if entry.direction == "desc" else "ASC"
        if entry.property_label == "count":
            # most/fewest: count the quality's variable per head variable
            head_terms = [t for t in self.stmt.head_args]
            if not head_terms:
                raise UnsupportedRelation("count quality needs a select head")
            self.count_var = self.qvar(term)
            self.group_by = GroupBy(self.qvar(head_terms[0]))
            self.order_by = OrderBy(direction, "count%s" % self.count_var, 1)
            return
        attr = "a%d" % self.attr_count
        self.attr_count += 1
        value_var = "o%d" % self.value_count
        self.value_count += 1
        self.where.append(PropertyBinding(
            attr, self._uris(entry.property_label, "property"),
            self.qvar(term), value_var))
        self.order_by = OrderBy(direction, value_var, 1)

    # -- head -------------------------------------------------------------------

    def _head(self):
        kind = self.stmt.head_kind
        if kind == "ask":
            return AskHead()
        if kind == "count":
            return CountHead(self.qvar(self.stmt.head_args[0]))
        if kind == "distance":
            a, b = self.stmt.head_args[:2]
            return DistanceHead(self.qvar(a), self.qvar(b))
        if kind == "location":
            var = self.qvar(self.stmt.head_args[0])
            return SelectHead(("%sGEOM" % var,))
        variables = tuple(self.qvar(t) for t in self.stmt.head_args)
        return SelectHead(variables, count_var=self.count_var)


def generate_query(stmt: LogicalStatement, mappings: Mappings,
                   table: SpatialRelationTable, qualities=None) -> QueryAst:
    """Translate a statement plus mapping results into a query AST."""
    gen = _Generator(stmt, mappings, table, qualities or {})
    return gen.generate()


def _check_bound_vars(ast: QueryAst) -> None:
    bound = set()
    geom_bound = set()
    for clause in ast.where:
        if isinstance(clause, ValuesBinding):
            bound.add(clause.var)
        elif isinstance(clause, GeometryBinding):
            geom_bound.add(clause.var)
        elif isinstance(clause, TypeBinding):
            bound.add(clause.var)
            geom_bound.add(clause.var)
        elif isinstance(clause, PropertyBinding):
            bound.add(clause.value_var)

    def check_condition(cond):
        for var in (cond.var_a, cond.var_b):
            if var not in geom_bound:
                raise MissingMapping("filter references unbound geometry ?%sGEOM"
                                     % var)

    for clause in ast.where:
        if isinstance(clause, (SfFilter, DistanceFilter)):
            check_condition(clause)
        elif isinstance(clause, OrFilter):
            for cond in clause.conditions:
                check_condition(cond)
        elif isinstance(clause, ExclusionFilter):
            if clause.var not in bound:
                raise MissingMapping("exclusion references unbound ?%s"
                                     % clause.var)
        elif isinstance(clause, CompareFilter):
            if clause.var not in bound:
                raise MissingMapping("comparison references unbound ?%s"
                                     % clause.var)
