"""Knowledge base: triples, WKT geometries, ontology, and name lookup.

File format (line-oriented UTF-8, tab-separated):

    S<TAB>P<TAB>O                              triple; O is a URI unless quoted
    S<TAB>geo:asWKT<TAB>"WKT..."               geometry for subject S
    URI<TAB>label<TAB>type|property<TAB>gloss  ontology entry (4 columns)

Names come from ``rdfs:label`` triples. Lookup candidates keep file order so
results are reproducible; identifiers are prefixed URIs throughout
(``yago:Oxford``), never expanded.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import GeometryError, KbParseError, NotFound, Unmapped
from .geoeval.geometry import parse_wkt
from .lexicon import WordVectorTable

GEOMETRY_PREDICATE = "geo:asWKT"
NAME_PREDICATE = "rdfs:label"
TYPE_PREDICATE = "rdf:type"


@dataclass(frozen=True)
class OntologyEntry:
    uri: str
    label: str
    kind: str  # type | property
    glossary: str


@dataclass
class Thresholds:
    label: float = 0.85
    glossary: float = 0.70


@dataclass
class MappingResult:
    uris: list
    stage: str  # exact | label | glossary
    scores: dict


@dataclass
class KnowledgeBase:
    triples: list = field(default_factory=list)
    geometries: dict = field(default_factory=dict)       # uri -> Geometry
    wkt: dict = field(default_factory=dict)              # uri -> raw WKT text
    ontology: dict = field(default_factory=dict)         # uri -> OntologyEntry
    name_index: dict = field(default_factory=dict)       # normalized name -> [uri]
    _spo: dict = field(default_factory=dict)
    _by_type: dict = field(default_factory=dict)
    _subjects: set = field(default_factory=set)

    def add_triple(self, s, p, o):
        key = (s, p, o)
        if key in self._spo.setdefault("all", set()):
            return
        self._spo["all"].add(key)
        self.triples.append(key)
        self._subjects.add(s)
        if p == TYPE_PREDICATE:
            self._by_type.setdefault(o, []).append(s)
        if p == NAME_PREDICATE:
            self.name_index.setdefault(normalize_name(o), []).append(s)

    def objects(self, s, p):
        return [o for (s2, p2, o) in self.triples if s2 == s and p2 == p]

    def of_type(self, type_uri):
        return list(self._by_type.get(type_uri, []))

    def subjects(self):
        return sorted(self._subjects)

    def entity_count(self) -> int:
        return len(self._subjects)


_PUNCT_RE = re.compile(r"[^\w\s]", re.UNICODE)


def normalize_name(name: str) -> str:
    text = _PUNCT_RE.sub("", name.casefold())
    return " ".join(text.split())


def _unquote(value: str):
    """Returns (value, is_literal)."""
    if len(value) >= 2 and value[0] == '"' and value[-1] == '"':
        return value[1:-1], True
    return value, False


def load_kb(path) -> KnowledgeBase:
    """Parse a KB file; duplicates are dropped, geometries validated."""
    kb = KnowledgeBase()
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) == 4:
            uri, label, kind, glossary = (f.strip() for f in fields)
            if kind not in ("type", "property"):
                raise KbParseError("ontology kind must be type or property, got %r"
                                   % kind, line=lineno)
            kb.ontology[uri] = OntologyEntry(uri, label, kind, glossary)
            continue
        if len(fields) != 3:
            raise KbParseError("expected 3 or 4 tab-separated fields, got %d"
                               % len(fields), line=lineno)
        s, p, o = (f.strip() for f in fields)
        if p == GEOMETRY_PREDICATE:
            wkt_text, quoted = _unquote(o)
            if not quoted:
                raise KbParseError("geometry object must be quoted WKT",
                                   line=lineno)
            try:
                geom = parse_wkt(wkt_text)
            except ValueError as exc:
                raise GeometryError("bad WKT for %s: %s" % (s, exc)) from exc
            kb.geometries[s] = geom
            kb.wkt[s] = wkt_text
            kb._subjects.add(s)
            continue
        value, _ = _unquote(o)
        kb.add_triple(s, p, value)
    _check_invariants(kb)
    return kb


def _check_invariants(kb: KnowledgeBase):
    for name, uris in kb.name_index.items():
        for uri in uris:
            if uri not in kb._subjects:
                raise KbParseError("indexed name %r points at unknown URI %s"
                                   % (name, uri))


def identify_concepts(name: str, kb: KnowledgeBase) -> list:
    """All URIs whose indexed names match; disambiguation happens at query time."""
    if not name.strip():
        raise NotFound("empty name")
    uris = kb.name_index.get(normalize_name(name))
    if not uris:
        raise NotFound("no knowledge-base entity named %r" % name)
    return list(uris)


_TOKEN_RE = re.compile(r"[A-Za-z][A-Za-z'-]*")


def _tokens(text: str) -> list:
    return [t.lower() for t in _TOKEN_RE.findall(text)]


def map_type_or_property(label: str, kind: str, kb: KnowledgeBase,
                         vectors: WordVectorTable,
                         thresholds: Thresholds | None = None) -> MappingResult:
    """Three sequential stages: exact, label similarity, glossary similarity.

    The first stage with at least one hit wins; candidates keep ontology file
    order with their scores.
    """
    if thresholds is None:
        thresholds = Thresholds()
    if not label.strip():
        raise Unmapped("empty label")
    entries = [e for e in kb.ontology.values() if e.kind == kind]

    target = normalize_name(label)
    exact = {e.uri: 1.0 for e in entries if normalize_name(e.label) == target}
    if exact:
        return MappingResult(list(exact), "exact", exact)

    query_tokens = _tokens(label)
    by_label = {}
    for e in entries:
        sim = vectors.similarity(query_tokens, _tokens(e.label))
        if sim >= thresholds.label:
            by_label[e.uri] = sim
    if by_label:
        return MappingResult(list(by_label), "label", by_label)

    by_glossary = {}
    for e in entries:
        sim = vectors.similarity(query_tokens, _tokens(e.glossary))
        if sim >= thresholds.glossary:
            by_glossary[e.uri] = sim
    if by_glossary:
        return MappingResult(list(by_glossary), "glossary", by_glossary)

    raise Unmapped("%r cannot be matched to a %s in the knowledge base"
                   % (label, kind))
