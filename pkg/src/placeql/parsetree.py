"""Constituency/dependency preprocessing, phrase labeling, relation extraction.

The constituency tree is trimmed (compound spans collapsed to leaves) and
encoded, then five phrase rules fire: conjunction, quality, location, measure
and comparison phrases. The dependency tree is collapsed so every labeled
phrase is a single node, and four grammatical rules read relations off it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import morph
from .annotation import EncodingAnnotation
from .encoding import (
    EncodingClass,
    CONCEPT_CODES,
    COMPARISON_CODES,
    CONJUNCTION_CODES,
    NAME_CODES,
    QUALITY_CODES,
    RELATION_CODES,
    TYPE_CODES,
    VERB_CODES,
)
from .errors import SpanMismatch

# Dependency labels accepted by each extraction rule; modern tag sets vary.
PREP_LABELS = {"prep", "nmod", "obl"}
OBJ_LABELS = {"dobj", "obj"}
SUBJ_LABELS = {"nsubj", "nsubjpass"}

_VERB_TAGS = {"VB", "VBZ", "VBP", "VBD", "VBN", "VBG"}


@dataclass
class ConstituencyNode:
    label: str
    children: list
    start: int
    end: int
    text: str = ""
    encoding: EncodingClass | None = None
    phrase_label: str | None = None
    # only set on the root returned by trim_and_encode / label_phrases:
    annotations: list = field(default_factory=list)
    phrases: list = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def span(self):
        return (self.start, self.end)

    def contains(self, start: int, end: int) -> bool:
        return self.start <= start and end <= self.end

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def leaves(self):
        for node in self.walk():
            if node.is_leaf:
                yield node


@dataclass(frozen=True)
class ConceptRef:
    """A reference to a concept occurrence, usable on either tree."""

    start: int
    end: int
    cls: EncodingClass
    text: str
    lemma: str

    @property
    def span(self):
        return (self.start, self.end)


@dataclass
class Measure:
    value: object  # int | float
    unit: str      # surface form of the unit/type constituent, verbatim
    unit_ref: ConceptRef | None = None

    def render(self) -> str:
        if not self.unit:
            return str(self.value)
        return "%s %s" % (self.value, self.unit)


@dataclass
class Phrase:
    id: int
    kind: str  # conjunction | negation | quality | location | measure | comparison
    node: ConstituencyNode
    operator: str | None = None       # conjunction: "and"/"or"; comparison: < > = <= >=
    constituents: list = field(default_factory=list)  # ConceptRefs
    relation_span: tuple | None = None
    relation_symbol: str | None = None
    relatum: ConceptRef | None = None
    measure: Measure | None = None
    nested: list = field(default_factory=list)        # inner location Phrases
    target: ConceptRef | None = None                  # comparison/negation/quality
    quality: str | None = None                        # quality lemma
    property_label: str | None = None                 # comparison property (elevation, ...)

    @property
    def span(self):
        return self.node.span

    def core_text(self, tokens) -> str:
        """Phrase text excluding chained inner location phrases."""
        skip = set()
        for inner in self.nested:
            skip.update(range(inner.node.start, inner.node.end))
        return " ".join(tokens[i].text for i in range(self.node.start, self.node.end)
                        if i not in skip)


@dataclass
class DependencyNode:
    id: int
    start: int
    end: int
    label: str
    head: int | None
    text: str
    lemma: str = ""
    pos: str = ""
    encoding: EncodingClass | None = None
    phrase: Phrase | None = None
    children: list = field(default_factory=list)

    @property
    def span(self):
        return (self.start, self.end)


@dataclass
class DependencyTree:
    nodes: dict
    root: int
    tokens: list

    def children_of(self, node_id, labels=None):
        out = []
        for cid in self.nodes[node_id].children:
            if labels is None or self.nodes[cid].label in labels:
                out.append(self.nodes[cid])
        return out

    def node_list(self):
        return [self.nodes[i] for i in sorted(self.nodes)]


@dataclass
class RelationSet:
    locatum_location: list = field(default_factory=list)   # (ConceptRef, Phrase)
    situation_property: list = field(default_factory=list) # (verb ConceptRef, ConceptRef|Phrase)
    place_activity: list = field(default_factory=list)     # (ConceptRef, verb ConceptRef)
    comparison_source: list = field(default_factory=list)  # (ConceptRef|None, Phrase)
    absorbed_verbs: set = field(default_factory=set)        # verbs whose content lives in a phrase
    warnings: list = field(default_factory=list)


# --------------------------------------------------------------------------
# constituency: build, trim, encode
# --------------------------------------------------------------------------

def build_constituency(nested, tokens) -> ConstituencyNode:
    """Materialize the interchange [label, child...] structure."""
    if isinstance(nested, int):
        tok = tokens[nested]
        return ConstituencyNode(tok.pos, [], nested, nested + 1, tok.text)
    label = nested[0]
    children = [build_constituency(c, tokens) for c in nested[1:]]
    return ConstituencyNode(label, children, children[0].start,
                            children[-1].end,
                            " ".join(c.text for c in children))


def _lowest_containing(root, start, end):
    node = root
    while True:
        next_node = None
        for child in node.children:
            if child.contains(start, end):
                next_node = child
                break
        if next_node is None:
            return node
        node = next_node


def _collapse_span(root, start, end, tokens):
    if end - start <= 1:
        return
    node = _lowest_containing(root, start, end)
    if node.is_leaf:
        return
    if node.span == (start, end):
        node.children = []
        node.text = " ".join(t.text for t in tokens[start:end])
        return
    merged = []
    keep = []
    for child in node.children:
        inside = start <= child.start and child.end <= end
        overlaps = child.start < end and start < child.end
        if inside:
            merged.append(child)
        elif overlaps:
            raise SpanMismatch(
                "span [%d,%d) crosses constituent %s[%d,%d)"
                % (start, end, child.label, child.start, child.end))
        else:
            keep.append(child)
    leaf = ConstituencyNode("NP", [], start, end,
                            " ".join(t.text for t in tokens[start:end]))
    out = []
    inserted = False
    for child in node.children:
        if child in merged:
            if not inserted:
                out.append(leaf)
                inserted = True
        else:
            out.append(child)
    node.children = out


def trim_and_encode(ctree: ConstituencyNode, annotations: list,
                    tokens: list) -> ConstituencyNode:
    """Collapse compound spans to leaves and attach encodings to nodes."""
    for ann in annotations:
        if ann.end - ann.start <= 1 or \
                ann.cls not in (NAME_CODES | COMPARISON_CODES):
            continue
        nested_concepts = any(
            other is not ann and ann.start <= other.start and
            other.end <= ann.end and other.cls in
            (CONCEPT_CODES | {EncodingClass.NUMBER})
            for other in annotations)
        if nested_concepts:
            continue  # wildcard comparisons keep their inner constituents
        _collapse_span(ctree, ann.start, ann.end, tokens)
    by_span = {}
    for node in ctree.walk():
        by_span[node.span] = node  # preorder: the deepest node wins
    for ann in annotations:
        node = by_span.get((ann.start, ann.end))
        if node is not None and node.encoding is None:
            node.encoding = ann.cls
    ctree.annotations = list(annotations)
    return ctree


def concept_refs(annotations, tokens) -> list:
    """Concept occurrences (P/p/E/e/o spans) in token order."""
    refs = []
    for ann in sorted(annotations, key=lambda a: (a.start, a.end)):
        if ann.cls not in CONCEPT_CODES:
            continue
        text = " ".join(t.text for t in tokens[ann.start:ann.end])
        if ann.cls in NAME_CODES:
            lemma = text
        else:
            lemma = morph.singularize(tokens[ann.start].lemma or text)
        refs.append(ConceptRef(ann.start, ann.end, ann.cls, text, lemma))
    return refs


def _ref_for_node(node, annotations, tokens):
    for ann in annotations:
        if (ann.start, ann.end) == node.span and ann.cls in CONCEPT_CODES:
            return concept_refs([ann], tokens)[0]
    return None


# --------------------------------------------------------------------------
# phrase labeling
# --------------------------------------------------------------------------

def _parent_map(root):
    parents = {}
    for node in root.walk():
        for child in node.children:
            parents[id(child)] = node
    return parents


def _ann_at(annotations, start, end, classes):
    for ann in annotations:
        if ann.start == start and ann.end == end and ann.cls in classes:
            return ann
    return None


def _nested_concept_classes(node, annotations):
    found = []
    for ann in annotations:
        if ann.cls in CONCEPT_CODES and node.contains(ann.start, ann.end):
            found.append(ann)
    return found


def label_phrases(ectree: ConstituencyNode, tokens: list,
                  lexicons) -> ConstituencyNode:
    """Apply the five phrase rules and record Phrase objects on the root."""
    annotations = ectree.annotations
    parents = _parent_map(ectree)
    phrases = []

    def new_phrase(**kw):
        ph = Phrase(id=len(phrases), **kw)
        phrases.append(ph)
        ph.node.phrase_label = ph.kind
        return ph

    _label_conjunctions(ectree, annotations, tokens, parents, new_phrase)
    _label_qualities(ectree, annotations, tokens, parents, new_phrase, lexicons)
    _label_locations(ectree, annotations, tokens, new_phrase, phrases)
    _label_measures(ectree, annotations, tokens, new_phrase)
    _attach_location_measures(phrases)
    _label_comparisons(ectree, annotations, tokens, parents, new_phrase,
                       phrases, lexicons)
    ectree.phrases = phrases
    return ectree


def _label_conjunctions(root, annotations, tokens, parents, new_phrase):
    for ann in annotations:
        if ann.cls not in (CONJUNCTION_CODES - {EncodingClass.NEGATION}):
            continue
        leaf = _leaf_at(root, ann.start)
        parent = parents.get(id(leaf))
        if parent is None:
            continue
        members = []
        for child in parent.children:
            ref = _ref_for_node(child, annotations, tokens)
            if ref is not None:
                members.append(ref)
        if len(members) >= 2 and len({m.cls for m in members}) == 1:
            new_phrase(kind="conjunction", node=parent,
                       operator="and" if ann.cls is EncodingClass.AND else "or",
                       constituents=members)
    for ann in annotations:
        if ann.cls is not EncodingClass.NEGATION:
            continue
        leaf = _leaf_at(root, ann.start)
        parent = parents.get(id(leaf))
        if parent is None:
            continue
        names = [a for a in _nested_concept_classes(parent, annotations)
                 if a.cls in NAME_CODES and a.start >= ann.end]
        if names:
            target = concept_refs([names[0]], tokens)[0]
            new_phrase(kind="negation", node=parent, target=target)


def _label_qualities(root, annotations, tokens, parents, new_phrase, lexicons):
    for ann in annotations:
        if ann.cls not in QUALITY_CODES:
            continue
        leaf = _leaf_at(root, ann.start)
        parent = parents.get(id(leaf))
        if parent is None:
            continue
        concept = None
        for child in parent.children:
            ref = _ref_for_node(child, annotations, tokens)
            if ref is not None:
                concept = ref
                break
        if concept is None:
            continue
        lemma = tokens[ann.start].text.lower()
        new_phrase(kind="quality", node=parent, target=concept, quality=lemma)


def _label_locations(root, annotations, tokens, new_phrase, phrases):
    rel_anns = [a for a in annotations if a.cls in RELATION_CODES]
    rel_anns.sort(key=lambda a: (a.start, a.end))
    located = []
    for ann in rel_anns:
        node = _lowest_location_ancestor(root, ann, annotations)
        if node is None:
            continue
        symbol = _relation_symbol(ann, annotations, tokens)
        ph = new_phrase(kind="location", node=node,
                        relation_span=(ann.start, ann.end),
                        relation_symbol=symbol)
        located.append(ph)
    # nesting and relatum chaining
    for ph in located:
        for other in located:
            if other is ph:
                continue
            if ph.node.contains(other.node.start, other.node.end) and \
                    ph.node.span != other.node.span:
                ph.nested.append(other)
        ph.nested.sort(key=lambda p: p.node.start)
    for ph in located:
        inner_spans = [p.node.span for p in ph.nested]
        ph.relatum = _first_anchor(ph.node, annotations, tokens, inner_spans,
                                   after=ph.relation_span[0])


def _lowest_location_ancestor(root, ann, annotations):
    """Lowest node containing the relation span plus an anchor place/date."""
    best = None
    for node in root.walk():
        if not node.contains(ann.start, ann.end):
            continue
        anchors = [a for a in annotations
                   if a.cls in (NAME_CODES | {EncodingClass.DATE})
                   and node.contains(a.start, a.end) and a.start >= ann.start]
        if not anchors:
            continue
        if best is None or (node.end - node.start) < (best.end - best.start):
            best = node
    return best


def _relation_symbol(ann, annotations, tokens, extra_skip=()):
    skip = set(extra_skip)
    for other in annotations:
        if other is ann:
            continue
        if ann.start <= other.start and other.end <= ann.end:
            if other.cls in (TYPE_CODES | {EncodingClass.PROPERTY,
                                           EncodingClass.NUMBER,
                                           EncodingClass.DATE}):
                skip.update(range(other.start, other.end))
    words = [tokens[i].text.lower() for i in range(ann.start, ann.end)
             if i not in skip]
    return morph.upper_snake(" ".join(words))


def _first_anchor(node, annotations, tokens, inner_spans, after):
    anchors = []
    for ann in annotations:
        if ann.cls not in (NAME_CODES | {EncodingClass.DATE}):
            continue
        if not node.contains(ann.start, ann.end) or ann.start < after:
            continue
        if any(s <= ann.start and ann.end <= e for (s, e) in inner_spans):
            continue
        anchors.append(ann)
    if not anchors:
        return None
    first = min(anchors, key=lambda a: a.start)
    if first.cls is EncodingClass.DATE:
        text = tokens[first.start].text
        return ConceptRef(first.start, first.end, EncodingClass.DATE, text, text)
    return concept_refs([first], tokens)[0]


def _label_measures(root, annotations, tokens, new_phrase):
    for node in root.walk():
        if node.is_leaf or node.phrase_label is not None:
            continue
        numbers = []
        units = []
        ok = True
        for leaf in node.leaves():
            ann = _leaf_annotation(annotations, leaf)
            if ann is None:
                ok = False
                break
            if ann.cls is EncodingClass.NUMBER:
                numbers.append(leaf)
            elif ann.cls in (TYPE_CODES | {EncodingClass.PROPERTY}):
                units.append(leaf)
            else:
                ok = False
                break
        if ok and numbers and units:
            unit_ref = _ref_for_node(units[0], annotations, tokens)
            measure = Measure(morph.number_value(numbers[0].text),
                              " ".join(u.text for u in units), unit_ref)
            new_phrase(kind="measure", node=node, measure=measure)


def _leaf_annotation(annotations, leaf):
    for ann in annotations:
        if ann.start == leaf.start and ann.end == leaf.end:
            return ann
    return None


def _attach_location_measures(phrases):
    for ph in phrases:
        if ph.kind != "location":
            continue
        rs, re_ = ph.relation_span
        for other in phrases:
            if other.kind == "measure" and rs <= other.node.start and \
                    other.node.end <= re_:
                ph.measure = other.measure
                break


def _label_comparisons(root, annotations, tokens, parents, new_phrase,
                       phrases, lexicons):
    for ann in annotations:
        if ann.cls not in COMPARISON_CODES:
            continue
        leaf = _leaf_at(root, ann.start)
        node = parents.get(id(leaf))
        ph_measure = None
        target = None
        bare_number = None
        while node is not None:
            for other in phrases:
                if other.kind == "measure" and node.contains(*other.node.span) \
                        and other.node.start >= ann.start:
                    ph_measure = other
                    break
            if ph_measure is not None:
                break
            concepts = [a for a in _nested_concept_classes(node, annotations)
                        if a.start >= ann.end]
            if concepts:
                target = concept_refs([min(concepts, key=lambda a: a.start)],
                                      tokens)[0]
                break
            bare_number = _number_after(annotations, tokens, node, ann.end)
            if bare_number is not None:
                break
            node = parents.get(id(node))
        if node is None:
            continue
        pattern = _comparison_pattern(lexicons, tokens, ann)
        operator = pattern.operator if pattern else "="
        prop = pattern.property_label if pattern else None
        symbol = morph.upper_snake(
            " ".join(tokens[i].text for i in range(ann.start, ann.end))) \
            if prop else operator
        measure = ph_measure.measure if ph_measure else None
        if measure is None and target is not None:
            number = _number_before(annotations, tokens, ann.end, target.start)
            if number is not None:
                measure = Measure(number, target.text, target)
        if measure is None and bare_number is not None:
            measure = Measure(bare_number, "")
        new_phrase(kind="comparison", node=node, operator=operator,
                   relation_symbol=symbol, property_label=prop,
                   measure=measure,
                   target=target or (measure.unit_ref if measure else None))


def _comparison_pattern(lexicons, tokens, ann):
    from .annotation import _match_pattern
    for pat in lexicons.comparisons:
        m = _match_pattern(tokens, ann.start, pat.tokens)
        if m is not None and m[0] == ann.end:
            return pat
    return None


def _number_before(annotations, tokens, start, end):
    for ann in annotations:
        if ann.cls is EncodingClass.NUMBER and start <= ann.start < end:
            return morph.number_value(tokens[ann.start].text)
    return None


def _number_after(annotations, tokens, node, start):
    for ann in annotations:
        if ann.cls is EncodingClass.NUMBER and ann.start >= start and \
                node.contains(ann.start, ann.end):
            return morph.number_value(tokens[ann.start].text)
    return None


def _leaf_at(root, index):
    for leaf in root.leaves():
        if leaf.start <= index < leaf.end:
            return leaf
    raise IndexError("no leaf covers token %d" % index)


# --------------------------------------------------------------------------
# dependency preprocessing and relation extraction
# --------------------------------------------------------------------------

def collapse_dependencies(arcs, tokens, ectree: ConstituencyNode,
                          entities=()) -> DependencyTree:
    """Collapse labeled phrases (and compound entity spans) to single nodes."""
    annotations = ectree.annotations
    spans = []
    collapsible = [ph for ph in ectree.phrases
                   if ph.kind in ("location", "comparison", "negation",
                                  "conjunction")]
    outer = [ph for ph in collapsible
             if not any(o is not ph and o.node.contains(*ph.node.span)
                        and o.node.span != ph.node.span for o in collapsible)]
    for ph in outer:
        spans.append((ph.node.start, ph.node.end, ph))
    for ent in entities:
        if ent.end - ent.start > 1 and \
                not any(s <= ent.start and ent.end <= e for s, e, _ in spans):
            spans.append((ent.start, ent.end, None))
    spans.sort()

    def unit_of(tok_index):
        for idx, (s, e, _) in enumerate(spans):
            if s <= tok_index < e:
                return ("span", idx)
        return ("tok", tok_index)

    head_of = {a.dep: (a.head, a.label) for a in arcs}
    nodes = {}
    unit_ids = {}

    def ensure(unit):
        if unit in unit_ids:
            return unit_ids[unit]
        nid = len(nodes)
        unit_ids[unit] = nid
        if unit[0] == "tok":
            tok = tokens[unit[1]]
            ann = next((a for a in annotations
                        if a.start == unit[1] and a.end == unit[1] + 1), None)
            nodes[nid] = DependencyNode(nid, unit[1], unit[1] + 1, "", None,
                                        tok.text, tok.lemma, tok.pos,
                                        ann.cls if ann else None)
        else:
            s, e, ph = spans[unit[1]]
            text = " ".join(t.text for t in tokens[s:e])
            enc = None
            if ph is None:
                ann = next((a for a in annotations
                            if a.start == s and a.end == e), None)
                enc = ann.cls if ann else None
            nodes[nid] = DependencyNode(nid, s, e, "", None, text,
                                        encoding=enc, phrase=ph)
        return nid

    root_id = None
    for unit in sorted({unit_of(i) for i in range(len(tokens))},
                       key=lambda u: u[1] if u[0] == "tok" else spans[u[1]][0]):
        nid = ensure(unit)
        node = nodes[nid]
        # external arc: first token in the unit whose head lies outside
        ext = None
        for i in range(node.start, node.end):
            if i not in head_of:
                continue
            h, lbl = head_of[i]
            if h == -1:
                ext = (None, "root")
                break
            if not (node.start <= h < node.end):
                ext = (unit_of(h), lbl)
                break
        if ext is None:
            ext = (None, "root")
        target, label = ext
        node.label = label
        if target is None:
            root_id = nid
            node.head = None
        else:
            hid = ensure(target)
            node.head = hid
    for node in nodes.values():
        if node.head is not None:
            nodes[node.head].children.append(node.id)
    if root_id is None:
        root_id = 0
    return DependencyTree(nodes, root_id, tokens)


def _as_ref(node, annotations, tokens):
    if node.encoding in CONCEPT_CODES:
        if node.encoding in NAME_CODES:
            lemma = node.text
        else:
            lemma = morph.singularize(node.lemma or node.text)
        return ConceptRef(node.start, node.end, node.encoding, node.text, lemma)
    return None


def extract_dependencies(dtree: DependencyTree,
                         ectree: ConstituencyNode) -> RelationSet:
    """Read the four relation kinds off the collapsed dependency tree."""
    annotations = ectree.annotations
    tokens = dtree.tokens
    rel = RelationSet()

    def concept_of(node):
        ref = _as_ref(node, annotations, tokens)
        if ref is not None:
            return ref
        if node.phrase is not None and node.phrase.kind == "conjunction":
            return node.phrase
        return None

    def subject_concept(verb_node):
        for child in dtree.children_of(verb_node.id, SUBJ_LABELS):
            ref = concept_of(child)
            if ref is not None:
                return ref
        if verb_node.label == "relcl" and verb_node.head is not None:
            # builder attaches relative-clause verbs to their antecedent
            return concept_of(dtree.nodes[verb_node.head])
        return None

    # 2) places/events with location phrases (plus nested chains)
    for node in dtree.node_list():
        ph = node.phrase
        if ph is None or ph.kind != "location":
            continue
        locatum = None
        if node.head is not None:
            if node.label not in PREP_LABELS:
                rel.warnings.append(
                    "location phrase %r attached with label %r, expected one of %s"
                    % (node.text, node.label, sorted(PREP_LABELS)))
            head = dtree.nodes[node.head]
            locatum = concept_of(head)
            if locatum is None and head.pos in _VERB_TAGS:
                locatum = subject_concept(head)
                rel.absorbed_verbs.add(head.span)
        if locatum is None:
            rel.warnings.append("location phrase %r has no locatum" % node.text)
        else:
            rel.locatum_location.append((locatum, ph))
        _chain_nested(ph, rel)

    # 3)+4) situation/activity relations
    for node in dtree.node_list():
        if node.encoding not in VERB_CODES:
            continue
        verb = ConceptRef(node.start, node.end, node.encoding, node.text,
                          morph.verb_lemma(node.lemma or node.text))
        subj = subject_concept(node)
        obj = None
        for child in dtree.children_of(node.id, OBJ_LABELS):
            if child.phrase is not None and child.phrase.kind == "comparison":
                rel.comparison_source.append((subj, child.phrase))
                if child.phrase.target is None or \
                        child.phrase.target.cls not in TYPE_CODES:
                    rel.absorbed_verbs.add(node.span)
                # a counted type inside the comparison still relates to the
                # verb ("have at least two castles"); name targets do not
                if child.phrase.target is not None and \
                        child.phrase.target.cls in TYPE_CODES:
                    obj = child.phrase.target
                break
            ref = concept_of(child)
            if ref is not None:
                obj = ref
                break
        if obj is not None:
            rel.situation_property.append((verb, obj))
        if subj is not None:
            rel.place_activity.append((subj, verb))

    # 5) comparison phrases attached directly to a concept (or hanging off a
    # copula, whose subject then supplies the source)
    seen_phrases = {id(ph) for _, ph in rel.comparison_source}
    for node in dtree.node_list():
        ph = node.phrase
        if ph is None or ph.kind != "comparison" or id(ph) in seen_phrases:
            continue
        if node.head is None:
            rel.comparison_source.append((None, ph))
            continue
        head = dtree.nodes[node.head]
        if head.pos in _VERB_TAGS:
            if head.encoding in VERB_CODES:
                continue  # handled through the verb rule above
            source = subject_concept(head)
        else:
            source = concept_of(head)
        if isinstance(source, Phrase):
            source = None
        rel.comparison_source.append((source, ph))
    return rel


def _chain_nested(ph, rel):
    for inner in ph.nested:
        # only chain phrases directly nested (not nested in a deeper phrase)
        deeper = any(o is not inner and o.node.contains(*inner.node.span)
                     for o in ph.nested)
        if deeper:
            continue
        if ph.relatum is not None:
            rel.locatum_location.append((ph.relatum, inner))
        else:
            rel.warnings.append("nested location phrase %r has no relatum to chain"
                                % inner.node.text)
