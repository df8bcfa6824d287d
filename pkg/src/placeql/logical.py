"""The logical intermediate representation and its canonical text form.

A statement is a head (query variables, an operator application, or a
Boolean marker) plus a body: constant declarations, type declarations and
relation functions joined conjunctively, with or-groups where conjunctions
in the question demand them. Canonical text looks like

    COUNT(x0): PLACE(High Street) ∧ PLACE(Oxford) ∧ PHARMACY(x0) ∧
    IN_RADIUS_OF(x0, High Street, 200 meter) ∧ IN(High Street, Oxford)

Constants keep their surface text; variables are numbered x0, x1, ... by
first mention. Non-head variables are implicitly existential (SPARQL
semantics).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import morph
from .encoding import EncodingClass, NAME_CODES, TYPE_CODES
from .errors import LogicalSyntaxError, UnboundIntent
from .parsetree import ConceptRef, Measure, Phrase

AND_SYM = "∧"  # ∧
OR_SYM = "∨"   # ∨
NOT_SYM = "¬"  # ¬

_COMPARISON_NAMES = {"<", ">", "=", "<=", ">="}


@dataclass(frozen=True)
class Term:
    kind: str     # constant | variable
    name: str     # surface text, or x0, x1, ...
    concept: str  # place | event | property

    def render(self) -> str:
        return self.name


@dataclass
class Declaration:
    predicate: str  # PLACE | EVENT | upper-snake type/property name
    term: Term

    def render(self) -> str:
        return "%s(%s)" % (self.predicate, self.term.render())


@dataclass
class FunctionApp:
    name: str
    args: tuple  # Term | Measure entries
    polarity: str = "positive"  # positive | negated
    category: str = "spatial"   # spatial | temporal | quality | comparison | situation | identity
    position: int = 0           # token position, for deterministic ordering
    property_label: str | None = None  # implied property for comparisons like HIGHER_THAN

    def render(self, ascii_mode: bool = False) -> str:
        rendered = "%s(%s)" % (self.name,
                               ", ".join(_render_arg(a) for a in self.args))
        if self.polarity == "negated":
            return ("NOT " if ascii_mode else NOT_SYM) + rendered
        return rendered


@dataclass
class Group:
    operator: str  # and | or
    items: list

    @property
    def position(self):
        return min(i.position for i in self.items) if self.items else 0


@dataclass
class LogicalStatement:
    head_kind: str  # select | count | distance | location | ask
    head_args: list  # Terms
    body: list       # Declaration | FunctionApp | Group entries
    # surface forms behind each term (and "var:PRED" for grouped type
    # declarations); query generation maps these, not the normalized names
    term_surfaces: dict = field(default_factory=dict)

    def declarations(self):
        for item in _flatten(self.body):
            if isinstance(item, Declaration):
                yield item

    def functions(self):
        for item in _flatten(self.body):
            if isinstance(item, FunctionApp):
                yield item

    def variables(self):
        seen = {}
        for item in _flatten(self.body):
            terms = [item.term] if isinstance(item, Declaration) else \
                [a for a in item.args if isinstance(a, Term)]
            for t in terms:
                if t.kind == "variable":
                    seen.setdefault(t.name, t)
        return list(seen.values())


def _flatten(items):
    for item in items:
        if isinstance(item, Group):
            yield from _flatten(item.items)
        else:
            yield item


def _render_arg(arg) -> str:
    if isinstance(arg, Term):
        return arg.render()
    if isinstance(arg, Measure):
        return arg.render()
    return str(arg)


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------

def serialize(stmt: LogicalStatement, ascii_mode: bool = False) -> str:
    """Canonical text: head, colon, declarations then relations."""
    and_j = " AND " if ascii_mode else " %s " % AND_SYM
    or_j = " OR " if ascii_mode else " %s " % OR_SYM

    def render_item(item):
        if isinstance(item, Group):
            joiner = and_j if item.operator == "and" else or_j
            return "(%s)" % joiner.join(render_item(i) for i in item.items)
        if isinstance(item, Declaration):
            return item.render()
        return item.render(ascii_mode)

    head = _render_head(stmt)
    if not stmt.body:
        return "%s: true" % head
    return "%s: %s" % (head, and_j.join(render_item(i) for i in stmt.body))


def _render_head(stmt) -> str:
    args = ", ".join(t.render() for t in stmt.head_args)
    if stmt.head_kind == "ask":
        return "ASK"
    if stmt.head_kind == "select":
        return args
    return "%s(%s)" % (stmt.head_kind.upper(), args)


# --------------------------------------------------------------------------
# construction from extracted concepts/relations/intent
# --------------------------------------------------------------------------

class _Builder:
    def __init__(self, concepts, relations, ectree, intent, tokens, lexicons):
        self.concepts = concepts
        self.relations = relations
        self.ectree = ectree
        self.intent = intent
        self.tokens = tokens
        self.lexicons = lexicons
        self.terms_by_span = {}
        self.constants = {}   # surface text -> Term
        self.variables = {}   # lemma -> Term
        self.var_decls = {}   # var name -> list[Declaration]
        self.excluded_spans = set()

    def build(self) -> LogicalStatement:
        self._mark_excluded_measure_units()
        self._make_terms()
        decls = self._declarations()
        relations = self._relations()
        relations = [self._distribute(app) for app in relations]
        head_kind, head_args = self._head()
        body = decls + relations
        stmt = LogicalStatement(head_kind, head_args, body,
                                term_surfaces=self._surfaces())
        self._check_bound(stmt)
        return stmt

    def _surfaces(self):
        surfaces = {}
        for text, term in self.constants.items():
            surfaces[term.name] = text
        grouped_vars = set()
        for ref in sorted(self.concepts, key=lambda c: c.start):
            term = self.terms_by_span.get(ref.span)
            if term is None or term.kind != "variable":
                continue
            if self._conjunction_group(ref) is not None:
                key = "%s:%s" % (term.name, morph.upper_snake(ref.lemma))
                surfaces.setdefault(key, ref.text)
                grouped_vars.add(term.name)
            surfaces.setdefault(term.name, ref.text)
        return surfaces

    # -- terms ------------------------------------------------------------

    def _mark_excluded_measure_units(self):
        for ph in self.ectree.phrases:
            if ph.kind == "location" and ph.measure is not None and \
                    ph.measure.unit_ref is not None:
                self.excluded_spans.add(ph.measure.unit_ref.span)
            if ph.kind == "comparison" and ph.measure is not None and \
                    ph.measure.unit_ref is not None and \
                    ph.measure.unit_ref.cls is EncodingClass.PROPERTY:
                self.excluded_spans.add(ph.measure.unit_ref.span)
        # property tokens inside a location phrase's relation span (e.g. the
        # unit of "in 200 meter radius of") never become terms
        for ph in self.ectree.phrases:
            if ph.kind != "location" or ph.relation_span is None:
                continue
            rs, re_ = ph.relation_span
            for c in self.concepts:
                if c.cls is EncodingClass.PROPERTY and rs <= c.start < re_:
                    self.excluded_spans.add(c.span)

    def _conjunction_group(self, ref):
        for ph in self.ectree.phrases:
            if ph.kind != "conjunction":
                continue
            for member in ph.constituents:
                if member.span == ref.span:
                    return ph
        return None

    def _make_terms(self):
        ordered = sorted(self.concepts, key=lambda c: c.start)
        for ref in ordered:
            if ref.span in self.excluded_spans:
                continue
            if ref.cls in NAME_CODES:
                concept = "place" if ref.cls is EncodingClass.PLACE_NAME else "event"
                term = self.constants.get(ref.text)
                if term is None:
                    term = Term("constant", ref.text, concept)
                    self.constants[ref.text] = term
                self.terms_by_span[ref.span] = term
                continue
            lemma = ref.lemma
            group = self._conjunction_group(ref)
            if group is not None:
                # same-class conjunction of types shares one variable
                lemma = min(m.lemma for m in group.constituents)
            term = self.variables.get(lemma)
            if term is None:
                concept = {"p": "place", "e": "event", "o": "property"}[ref.cls.value]
                term = Term("variable", "x%d" % len(self.variables), concept)
                self.variables[lemma] = term
                self.var_decls[term.name] = []
            self.terms_by_span[ref.span] = term

    def term_of(self, ref):
        if ref is None:
            return None
        term = self.terms_by_span.get(ref.span)
        return term

    # -- declarations -------------------------------------------------------

    def _declarations(self):
        items = []
        for text, term in self.constants.items():
            items.append(Declaration(term.concept.upper(), term))
        done_vars = set()
        grouped = {}
        for ref in sorted(self.concepts, key=lambda c: c.start):
            term = self.terms_by_span.get(ref.span)
            if term is None or term.kind != "variable":
                continue
            group = self._conjunction_group(ref)
            pred = morph.upper_snake(ref.lemma)
            decl = Declaration(pred, term)
            if group is not None:
                key = (id(group), term.name)
                if key not in grouped:
                    grouped[key] = Group(group.operator, [])
                    items.append(grouped[key])
                    done_vars.add((term.name, None))
                if all(d.predicate != pred for d in grouped[key].items):
                    grouped[key].items.append(decl)
                self.var_decls[term.name].append(decl)
            else:
                if (term.name, pred) in done_vars:
                    continue
                done_vars.add((term.name, pred))
                items.append(decl)
                self.var_decls[term.name].append(decl)
        return items

    # -- relations ----------------------------------------------------------

    def _relations(self):
        apps = []
        skip_symbols = set()
        if self.intent.kind == "distance":
            skip_symbols = {"FROM", "TO"}
        for locatum, ph in self.relations.locatum_location:
            if ph.relation_symbol in skip_symbols:
                continue
            args = [self._arg(locatum), self._arg(ph.relatum)]
            if ph.measure is not None:
                args.append(ph.measure)
            category = "temporal" if self._is_temporal(ph) else "spatial"
            if None in args[:2]:
                continue
            apps.append(FunctionApp(ph.relation_symbol, tuple(args),
                                    category=category,
                                    position=ph.relation_span[0]))
        verbs_done = set()
        subj_by_verb = {v.span: s for s, v in self.relations.place_activity}
        for verb, obj in self.relations.situation_property:
            args = [a for a in (self._arg(subj_by_verb.get(verb.span)),
                                self._arg(obj)) if a is not None]
            if not args:
                continue
            verbs_done.add(verb.span)
            apps.append(FunctionApp(morph.upper_snake(verb.lemma), tuple(args),
                                    category="situation", position=verb.start))
        for subj, verb in self.relations.place_activity:
            if verb.span in verbs_done or \
                    verb.span in self.relations.absorbed_verbs:
                continue
            arg = self._arg(subj)
            if arg is None:
                continue
            apps.append(FunctionApp(morph.upper_snake(verb.lemma), (arg,),
                                    category="situation", position=verb.start))
        for source, ph in self.relations.comparison_source:
            src = self._arg(source)
            if src is None and self.intent.targets:
                src = self.term_of(self.intent.targets[0])
            target = ph.measure if ph.measure is not None else self._arg(ph.target)
            if src is None or target is None:
                continue
            apps.append(FunctionApp(ph.relation_symbol or ph.operator,
                                    (src, target), category="comparison",
                                    position=ph.node.start,
                                    property_label=ph.property_label))
        for ph in self.ectree.phrases:
            if ph.kind == "quality":
                term = self.term_of(ph.target)
                if term is None:
                    continue
                apps.append(FunctionApp(ph.quality.upper(), (term,),
                                        category="quality",
                                        position=ph.node.start))
            elif ph.kind == "negation":
                excluded = self.term_of(ph.target)
                subject = self.term_of(self.intent.targets[0]) \
                    if self.intent.targets else None
                if excluded is None or subject is None:
                    continue
                apps.append(FunctionApp("EQUALS", (subject, excluded),
                                        polarity="negated", category="identity",
                                        position=ph.node.start))
        apps.sort(key=lambda a: a.position)
        return apps

    def _is_temporal(self, ph):
        rs, re_ = ph.relation_span
        for ann in self.ectree.annotations:
            if (ann.start, ann.end) == (rs, re_):
                return ann.cls is EncodingClass.TEMPORAL_RELATION
        return False

    def _arg(self, ref):
        if ref is None:
            return None
        if isinstance(ref, Phrase):
            return ref  # conjunction phrase: expanded by _distribute
        if ref.cls is EncodingClass.DATE:
            return ref.text
        return self.term_of(ref)

    # -- conjunction distribution --------------------------------------------

    def _distribute(self, app, done=None):
        if not isinstance(app, FunctionApp):
            return app
        done = set(done or ())
        for i, arg in enumerate(app.args):
            members, operator, phrase_id = self._expansion(arg)
            if members is None or phrase_id in done:
                continue
            done.add(phrase_id)
            copies = []
            seen = set()
            for member in members:
                term = self.term_of(member)
                if term is None:
                    continue
                new_args = app.args[:i] + (term,) + app.args[i + 1:]
                key = (app.name, tuple(_render_arg(a) for a in new_args))
                if key in seen:
                    continue
                seen.add(key)
                copies.append(FunctionApp(app.name, new_args, app.polarity,
                                          app.category, app.position,
                                          app.property_label))
            if not copies:
                return app
            copies = [self._distribute(c, done) for c in copies]
            if len(copies) == 1:
                return copies[0]
            return Group(operator, copies)
        return app

    def _expansion(self, arg):
        """Conjunction members/operator/phrase-id for an arg, or Nones."""
        if isinstance(arg, Phrase):
            return arg.constituents, arg.operator, arg.id
        if isinstance(arg, Term) and arg.kind == "constant":
            for ph in self.ectree.phrases:
                if ph.kind != "conjunction":
                    continue
                for member in ph.constituents:
                    if member.text == arg.name and member.cls in NAME_CODES:
                        return ph.constituents, ph.operator, ph.id
        return None, None, None

    # -- head -----------------------------------------------------------------

    def _head(self):
        kind = self.intent.kind
        targets = [self.term_of(t) for t in self.intent.targets]
        if any(t is None for t in targets):
            raise UnboundIntent("intent target has no term")
        if kind == "ask_boolean":
            return "ask", []
        if kind == "count":
            return "count", targets[:1]
        if kind == "distance":
            return "distance", targets[:2]
        if kind == "select_location":
            return "location", targets[:1]
        return "select", targets[:1]

    def _check_bound(self, stmt):
        declared = {d.term.name for d in stmt.declarations()}
        for term in stmt.head_args:
            if term.name not in declared:
                raise UnboundIntent("intent target %s has no declaration"
                                    % term.name)


def build_statement(concepts, relations, ectree, intent, tokens,
                    lexicons) -> LogicalStatement:
    """Assemble declarations and relation functions under the intent head."""
    builder = _Builder(concepts, relations, ectree, intent, tokens, lexicons)
    stmt = builder.build()
    # and-groups at the top level are flattened into the main conjunction
    flat = []
    for item in stmt.body:
        if isinstance(item, Group) and item.operator == "and":
            flat.extend(item.items)
        else:
            flat.append(item)
    stmt.body = flat
    return stmt


def validate_statement(stmt: LogicalStatement) -> None:
    """Structural checks: arity discipline and variable hygiene."""
    for app in stmt.functions():
        n = len(app.args)
        if app.category == "quality" and n != 1:
            raise ValueError("quality %s has arity %d" % (app.name, n))
        if app.category == "comparison" and n != 2:
            raise ValueError("comparison %s has arity %d" % (app.name, n))
        if app.category in ("spatial", "temporal") and n not in (2, 3):
            raise ValueError("relation %s has arity %d" % (app.name, n))
    declared = {d.term.name for d in stmt.declarations()}
    for var in stmt.variables():
        if var.name not in declared:
            raise ValueError("variable %s has no type declaration" % var.name)
    for term in stmt.head_args:
        if term.kind == "variable" and term.name not in declared:
            raise ValueError("head variable %s not declared" % term.name)


# --------------------------------------------------------------------------
# reference parser for the canonical text (round-trips and scoring)
# --------------------------------------------------------------------------

_HEAD_RE = re.compile(r"^(ASK|COUNT|DISTANCE|LOCATION)\b")
_VAR_RE = re.compile(r"^x\d+$")
_MEASURE_RE = re.compile(r"^(\d+(?:\.\d+)?) (.+)$")


def parse_logical(text: str) -> LogicalStatement:
    """Parse canonical logical text back into a statement.

    Categories are re-derived structurally (declarations are unary
    applications of non-comparison names appearing before any relation);
    structural equality for round-trip checks ignores categories.
    """
    text = text.strip()
    text = text.replace(" AND ", " %s " % AND_SYM).replace(" OR ", " %s " % OR_SYM)
    text = text.replace("NOT ", NOT_SYM)
    if ":" not in text:
        raise LogicalSyntaxError("missing head separator ':'")
    head_text, body_text = text.split(":", 1)
    head_kind, head_args = _parse_head(head_text.strip())
    body_text = body_text.strip()
    body = []
    if body_text and body_text != "true":
        for chunk in _split_top(body_text, AND_SYM):
            body.append(_parse_item(chunk.strip()))
    return LogicalStatement(head_kind, head_args, body)


def _parse_head(text):
    m = _HEAD_RE.match(text)
    if m:
        kw = m.group(1)
        if kw == "ASK":
            return "ask", []
        inner = text[len(kw):].strip()
        if not (inner.startswith("(") and inner.endswith(")")):
            raise LogicalSyntaxError("malformed head: %r" % text)
        args = [_parse_term(a.strip()) for a in inner[1:-1].split(",")]
        return kw.lower(), args
    args = [_parse_term(a.strip()) for a in text.split(",")]
    if not all(t.kind == "variable" for t in args):
        raise LogicalSyntaxError("select head must list variables: %r" % text)
    return "select", args


def _parse_term(token):
    if _VAR_RE.match(token):
        return Term("variable", token, "place")
    return Term("constant", token, "place")


def _split_top(text, sym):
    parts = []
    depth = 0
    current = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and text.startswith(" %s " % sym, i):
            parts.append("".join(current))
            current = []
            i += len(sym) + 2
            continue
        current.append(ch)
        i += 1
    parts.append("".join(current))
    return parts


def _parse_item(chunk):
    if chunk.startswith("(") and chunk.endswith(")") and \
            (" %s " % OR_SYM) in chunk:
        inner = chunk[1:-1]
        items = [_parse_item(c.strip()) for c in _split_top(inner, OR_SYM)]
        return Group("or", items)
    return _parse_app(chunk)


def _parse_app(chunk):
    polarity = "positive"
    if chunk.startswith(NOT_SYM):
        polarity = "negated"
        chunk = chunk[len(NOT_SYM):].strip()
    m = re.match(r"^([^()\s]+)\((.*)\)$", chunk)
    if not m:
        raise LogicalSyntaxError("malformed application: %r" % chunk)
    name, arg_text = m.group(1), m.group(2)
    args = []
    for raw in arg_text.split(","):
        raw = raw.strip()
        mm = _MEASURE_RE.match(raw)
        if mm and name not in ("PLACE", "EVENT"):
            value = float(mm.group(1))
            value = int(value) if value.is_integer() else value
            args.append(Measure(value, mm.group(2)))
        else:
            args.append(_parse_term(raw))
    if len(args) == 1 and name not in _COMPARISON_NAMES and \
            polarity == "positive" and isinstance(args[0], Term):
        # unary application: declaration unless the name is a known relation;
        # scoring re-categorizes with lexicons, structure is what matters here
        return Declaration(name, args[0])
    return FunctionApp(name, tuple(args), polarity=polarity)


def to_struct(stmt: LogicalStatement):
    """Category-free structural form used for round-trip equality."""
    def item_struct(item):
        if isinstance(item, Group):
            return ("group", item.operator,
                    tuple(item_struct(i) for i in item.items))
        if isinstance(item, Declaration):
            return ("app", item.predicate, (item.term.name,), "positive")
        return ("app", item.name,
                tuple(_render_arg(a) for a in item.args), item.polarity)

    return (stmt.head_kind, tuple(t.name for t in stmt.head_args),
            tuple(item_struct(i) for i in stmt.body))


def to_json(stmt: LogicalStatement) -> dict:
    def item_json(item):
        if isinstance(item, Group):
            return {"group": item.operator,
                    "items": [item_json(i) for i in item.items]}
        if isinstance(item, Declaration):
            return {"declaration": item.predicate, "term": item.term.name,
                    "concept": item.term.concept}
        return {"function": item.name,
                "args": [_render_arg(a) for a in item.args],
                "polarity": item.polarity, "category": item.category}

    return {"head": {"kind": stmt.head_kind,
                     "args": [t.name for t in stmt.head_args]},
            "body": [item_json(i) for i in stmt.body]}
