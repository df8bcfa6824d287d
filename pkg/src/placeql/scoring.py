"""Corpus scoring: per-class precision/recall/f-score with macro averaging.

Per encoding class, precision/recall are averaged over the entries where the
class occurs (in gold or prediction); the reported f-score is the harmonic
mean of the reported precision and recall. Logical statements are scored per
category (declarations, spatiotemporal relations, qualities, comparisons,
conjunctions, situations), queries per clause kind, and every stage also
gets an exact-match accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .encoding import EncodingClass
from .logical import Declaration, FunctionApp, Group, parse_logical, _render_arg
from .querygen import render_clause
from .geoeval.parser import parse_query


def canonical_query_text(text: str) -> str:
    """Whitespace-insensitive canonical form for query comparison."""
    return "".join(text.split())


def canonical_logical_text(text: str) -> str:
    return " ".join(text.split())


@dataclass
class PRF:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    precisions: list = field(default_factory=list)
    recalls: list = field(default_factory=list)

    def observe(self, predicted, golden):
        pred = list(predicted)
        gold = list(golden)
        tp = 0
        remaining = list(gold)
        for p in pred:
            if p in remaining:
                remaining.remove(p)
                tp += 1
        self.tp += tp
        self.fp += len(pred) - tp
        self.fn += len(gold) - tp
        if pred:
            self.precisions.append(tp / len(pred))
        if gold:
            self.recalls.append(tp / len(gold))

    @property
    def count(self) -> int:
        return self.tp + self.fn

    def report(self) -> dict:
        precision = 100.0 * (sum(self.precisions) / len(self.precisions)) \
            if self.precisions else None
        recall = 100.0 * (sum(self.recalls) / len(self.recalls)) \
            if self.recalls else None
        f = None
        if precision is not None and recall is not None and \
                (precision + recall) > 0:
            f = 2 * precision * recall / (precision + recall)
        return {"precision": _round(precision), "recall": _round(recall),
                "f_score": _round(f), "count": self.count}


def _round(v):
    return None if v is None else round(v, 1)


# --------------------------------------------------------------------------
# per-stage item extraction
# --------------------------------------------------------------------------

def encoding_items(encodings):
    """(start, end, code) triples from annotations or golden dicts."""
    items = []
    for e in encodings:
        if isinstance(e, dict):
            items.append((e["start"], e["end"], e["code"]))
        else:
            items.append((e.start, e.end, e.cls.value))
    return items


_COMPARISON_OPS = {"<", ">", "=", "<=", ">="}


def categorize_app(item, lexicons) -> str:
    """Category of a parsed golden application, re-derived from lexicons."""
    if isinstance(item, Declaration):
        return "declaration"
    name = item.name
    if name in _COMPARISON_OPS or name.endswith("_THAN"):
        return "comparison"
    if name == "EQUALS":
        return "identity"
    if name.lower() in lexicons.qualities:
        return "quality"
    lower = name.lower().replace("_", " ")
    if lower in lexicons.active_verbs or lower in lexicons.stative_verbs:
        return "situation"
    return "spatial"


def _render_item(item) -> str:
    if isinstance(item, Declaration):
        return item.render()
    return item.render()


def logical_items(stmt, lexicons):
    """category -> list of rendered items, plus conjunction units."""
    out = {"declaration": [], "spatial": [], "quality": [], "comparison": [],
           "situation": [], "conjunction": [], "identity": []}

    def walk(items):
        for item in items:
            if isinstance(item, Group):
                rendered = sorted(_render_item(i) for i in item.items
                                  if not isinstance(i, Group))
                out["conjunction"].append("%s(%s)" % (item.operator,
                                                      " ; ".join(rendered)))
                walk(item.items)
                continue
            if isinstance(item, Declaration):
                # the reference parser reads unary applications back as
                # declarations; qualities and bare situation verbs are
                # re-categorized from the lexicons
                name = item.predicate.lower()
                if name in lexicons.qualities:
                    out["quality"].append(item.render())
                elif name in lexicons.active_verbs or \
                        name in lexicons.stative_verbs:
                    out["situation"].append(item.render())
                else:
                    out["declaration"].append(item.render())
                continue
            category = categorize_app(item, lexicons)
            if category == "spatial":
                out["spatial"].append(item.render())
            else:
                out[category].append(item.render())

    walk(stmt.body)
    # and-replication at the top level also counts as a conjunction unit:
    # same function name applied with exactly one differing argument
    apps = [i for i in stmt.body if isinstance(i, FunctionApp)]
    by_name = {}
    for app in apps:
        by_name.setdefault((app.name, len(app.args)), []).append(app)
    for (name, _n), group in sorted(by_name.items()):
        if len(group) < 2:
            continue
        args = [tuple(_render_arg(a) for a in g.args) for g in group]
        diffs = {i for a in args for i, (x, y) in enumerate(zip(args[0], a))
                 if x != y}
        if len(diffs) == 1:
            rendered = sorted(g.render() for g in group)
            out["conjunction"].append("and(%s)" % " ; ".join(rendered))
    return out


def query_clause_items(ast):
    return [render_clause(c) for c in ast.where]


# --------------------------------------------------------------------------
# score report
# --------------------------------------------------------------------------

LOGICAL_ROWS = [("declaration", "Declaration"),
                ("spatial", "Spatiotemporal relations"),
                ("quality", "Quality"),
                ("comparison", "Comparison"),
                ("conjunction", "Conjunction"),
                ("situation", "Situation")]


@dataclass
class ScoreReport:
    mode: str
    entries: int = 0
    encoding_classes: dict = field(default_factory=dict)   # label -> PRF
    logical_categories: dict = field(default_factory=dict)
    concept_prf: PRF = field(default_factory=PRF)
    mapping_prf: PRF = field(default_factory=PRF)
    clause_prf: PRF = field(default_factory=PRF)
    intent_matches: int = 0
    aggregation_prf: PRF = field(default_factory=PRF)
    sorting_prf: PRF = field(default_factory=PRF)
    stage_exact: dict = field(default_factory=lambda: {
        "encodings": 0, "logical": 0, "query": 0, "answer": 0})
    failures: list = field(default_factory=list)

    def stage_rate(self, stage) -> float:
        return 100.0 * self.stage_exact[stage] / self.entries \
            if self.entries else 0.0

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "entries": self.entries,
            "encoding_classes": {k: v.report()
                                 for k, v in sorted(self.encoding_classes.items())},
            "logical": {label: self.logical_categories[key].report()
                        for key, label in LOGICAL_ROWS
                        if key in self.logical_categories},
            "query_generation": {
                "concept_identification": self.concept_prf.report(),
                "ontology_mapping": self.mapping_prf.report(),
                "query_exact": _round(self.stage_rate("query")),
            },
            "query_clauses": {
                "intent": _round(100.0 * self.intent_matches / self.entries
                                 if self.entries else 0.0),
                "criteria": self.clause_prf.report(),
                "aggregation": self.aggregation_prf.report(),
                "sorting": self.sorting_prf.report(),
            },
            "stage_exact": {k: _round(self.stage_rate(k))
                            for k in self.stage_exact},
            "failures": self.failures,
        }

    def to_text(self) -> str:
        lines = ["corpus evaluation (%s mode, %d entries)"
                 % (self.mode, self.entries)]
        lines.append("")
        lines.append("encoding extraction")
        lines.append("  %-26s %9s %9s %9s %7s" % ("class", "precision",
                                                  "recall", "f-score", "count"))
        for label in sorted(self.encoding_classes):
            r = self.encoding_classes[label].report()
            lines.append("  %-26s %9s %9s %9s %7d"
                         % (label, _fmt(r["precision"]), _fmt(r["recall"]),
                            _fmt(r["f_score"]), r["count"]))
        lines.append("")
        lines.append("logical statements")
        for key, label in LOGICAL_ROWS:
            if key not in self.logical_categories:
                continue
            r = self.logical_categories[key].report()
            lines.append("  %-26s %9s %9s %9s %7d"
                         % (label, _fmt(r["precision"]), _fmt(r["recall"]),
                            _fmt(r["f_score"]), r["count"]))
        lines.append("")
        lines.append("query generation")
        for label, prf in (("Concept identification", self.concept_prf),
                           ("Ontology mapping", self.mapping_prf)):
            r = prf.report()
            lines.append("  %-26s %9s %9s %9s"
                         % (label, _fmt(r["precision"]), _fmt(r["recall"]),
                            _fmt(r["f_score"])))
        lines.append("  %-26s %9s" % ("Query (exact)",
                                      _fmt(_round(self.stage_rate("query")))))
        lines.append("")
        lines.append("query clauses")
        lines.append("  %-26s %9s" % ("Intent (SELECT/ASK)",
                                      _fmt(_round(100.0 * self.intent_matches
                                                  / self.entries
                                                  if self.entries else 0.0))))
        for label, prf in (("Criteria (WHERE)", self.clause_prf),
                           ("Aggregation (GROUP BY)", self.aggregation_prf),
                           ("Sorting (ORDER BY)", self.sorting_prf)):
            r = prf.report()
            lines.append("  %-26s %9s %9s %9s"
                         % (label, _fmt(r["precision"]), _fmt(r["recall"]),
                            _fmt(r["f_score"])))
        lines.append("")
        lines.append("stage-exact accuracy")
        for stage in ("encodings", "logical", "query", "answer"):
            lines.append("  %-26s %9s" % (stage,
                                          _fmt(_round(self.stage_rate(stage)))))
        if self.failures:
            lines.append("")
            lines.append("failures")
            for f in self.failures:
                lines.append("  %s" % f)
        return "\n".join(lines) + "\n"


def _fmt(v):
    return "-" if v is None else ("%.1f" % v)


def score_entry(report: ScoreReport, entry, produced, lexicons):
    """Fold one entry's produced artifacts into the report.

    ``produced`` carries: encodings (annotations), logical_text, statement,
    query_text, answer_json, concepts, mappings (all may be None on
    failure).
    """
    report.entries += 1
    golden_enc = encoding_items(entry.encodings)
    pred_enc = encoding_items(produced.get("encodings") or [])
    classes = {code for (_s, _e, code) in golden_enc} | \
              {code for (_s, _e, code) in pred_enc}
    for code in classes:
        label = EncodingClass.from_code(code).label
        prf = report.encoding_classes.setdefault(label, PRF())
        prf.observe([i for i in pred_enc if i[2] == code],
                    [i for i in golden_enc if i[2] == code])
    if pred_enc == golden_enc:
        report.stage_exact["encodings"] += 1

    golden_stmt = parse_logical(entry.logical)
    golden_items = logical_items(golden_stmt, lexicons)
    produced_stmt = produced.get("statement")
    pred_items = logical_items(produced_stmt, lexicons) if produced_stmt \
        else {k: [] for k in golden_items}
    for key, _label in LOGICAL_ROWS:
        prf = report.logical_categories.setdefault(key, PRF())
        prf.observe(pred_items.get(key, []), golden_items.get(key, []))
    if produced.get("logical_text") and \
            canonical_logical_text(produced["logical_text"]) == \
            canonical_logical_text(entry.logical):
        report.stage_exact["logical"] += 1

    report.concept_prf.observe(
        _pairs(produced.get("concepts") or {}), _pairs(entry.concepts))
    report.mapping_prf.observe(
        _pairs(produced.get("mappings") or {}), _pairs(entry.mappings))

    golden_ast = parse_query(entry.query)
    query_text = produced.get("query_text")
    if query_text and canonical_query_text(query_text) == \
            canonical_query_text(entry.query):
        report.stage_exact["query"] += 1
    pred_ast = None
    if query_text:
        try:
            pred_ast = parse_query(query_text)
        except Exception:
            pred_ast = None
    if pred_ast is not None and pred_ast.head == golden_ast.head:
        report.intent_matches += 1
    report.clause_prf.observe(
        query_clause_items(pred_ast) if pred_ast else [],
        query_clause_items(golden_ast))
    golden_agg = [(golden_ast.group_by, golden_ast.having)] \
        if golden_ast.group_by else []
    pred_agg = [(pred_ast.group_by, pred_ast.having)] \
        if pred_ast and pred_ast.group_by else []
    if golden_agg or pred_agg:
        report.aggregation_prf.observe(pred_agg, golden_agg)
    golden_sort = [golden_ast.order_by] if golden_ast.order_by else []
    pred_sort = [pred_ast.order_by] if pred_ast and pred_ast.order_by else []
    if golden_sort or pred_sort:
        report.sorting_prf.observe(pred_sort, golden_sort)

    if produced.get("answer") is not None and \
            produced["answer"] == entry.answer:
        report.stage_exact["answer"] += 1


def _pairs(mapping: dict):
    out = []
    for key in sorted(mapping):
        for uri in mapping[key]:
            out.append((key, uri))
    return out
