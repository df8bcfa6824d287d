"""End-to-end composition: question text (or annotation document) to query.

The Compiler owns the loaded resources (lexicons, vectors, KB, relation
table) and is safe to reuse across questions; every stage is a pure function
of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import interchange, kb as kbmod, tagger
from .annotation import extract_encodings
from .config import Config
from .encoding import QUESTION_CODES, EncodingClass
from .errors import NoIntent
from .intent import resolve_intent
from .lexicon import WordVectorTable, load_lexicons
from .logical import Declaration, Group, build_statement, serialize
from .parsetree import (
    build_constituency,
    collapse_dependencies,
    concept_refs,
    extract_dependencies,
    label_phrases,
    trim_and_encode,
)
from .querygen import Mappings, SpatialRelationTable, generate_query, serialize_query


@dataclass
class Compilation:
    doc: object
    encodings: list
    ctree: object
    dtree: object
    relations: object
    concepts: list
    intent: object = None
    statement: object = None
    logical_text: str = ""
    mappings: object = None
    query_ast: object = None
    query_text: str = ""
    warnings: list = field(default_factory=list)


class Compiler:
    def __init__(self, config: Config | None = None, kb=None):
        self.config = config or Config()
        self.lexicons = load_lexicons(self.config.lexicon_dir)
        self.vectors = WordVectorTable.load(self.config.vectors_path)
        self.relation_table = SpatialRelationTable.load(self.config.relations_path)
        self.kb = kb
        self.thresholds = kbmod.Thresholds(self.config.label_threshold,
                                           self.config.glossary_threshold)

    def load_kb(self, path=None):
        self.kb = kbmod.load_kb(path or self.config.kb_path)
        return self.kb

    def annotate(self, question: str) -> interchange.AnnotationDocument:
        return tagger.annotate(question, self.lexicons)

    def compile(self, question: str = None, doc=None, logical_only: bool = False,
                ascii_logic: bool | None = None) -> Compilation:
        """Run the pipeline; raises stage-labeled errors on failure."""
        if doc is None:
            doc = self.annotate(question)
        tokens = doc.tokens
        encodings = extract_encodings(tokens, doc.entities, self.lexicons,
                                      self.vectors)
        ctree = build_constituency(doc.constituency, tokens)
        ctree = trim_and_encode(ctree, encodings, tokens)
        ctree = label_phrases(ctree, tokens, self.lexicons)
        concepts = concept_refs(encodings, tokens)
        dtree = collapse_dependencies(doc.dependencies, tokens, ctree,
                                      doc.entities)
        relations = extract_dependencies(dtree, ctree)
        result = Compilation(doc, encodings, ctree, dtree, relations, concepts,
                             warnings=list(relations.warnings))

        qword = next((a for a in encodings if a.cls in QUESTION_CODES), None)
        if qword is None:
            raise NoIntent("no question word recognized")
        result.intent = resolve_intent(qword.cls, concepts, ctree, tokens,
                                       (qword.start, qword.end))
        result.statement = build_statement(concepts, relations, ctree,
                                           result.intent, tokens, self.lexicons)
        if ascii_logic is None:
            ascii_logic = self.config.ascii_logic
        result.logical_text = serialize(result.statement, ascii_mode=ascii_logic)
        if logical_only:
            return result

        result.mappings = self.resolve_mappings(result.statement)
        result.query_ast = generate_query(result.statement, result.mappings,
                                          self.relation_table,
                                          self.lexicons.qualities)
        result.query_text = serialize_query(result.query_ast)
        return result

    def resolve_mappings(self, statement) -> Mappings:
        """Concept identification plus ontology mapping for one statement."""
        if self.kb is None:
            self.load_kb()
        mappings = Mappings()
        surfaces = statement.term_surfaces
        for item in statement.body:
            decls = item.items if isinstance(item, Group) else [item]
            for decl in decls:
                if not isinstance(decl, Declaration):
                    continue
                term = decl.term
                if term.kind == "constant":
                    if term.name not in mappings.terms:
                        mappings.terms[term.name] = kbmod.identify_concepts(
                            term.name, self.kb)
                    continue
                grouped = isinstance(item, Group)
                key = "%s:%s" % (term.name, decl.predicate) if grouped \
                    else term.name
                surface = surfaces.get(key) or surfaces.get(term.name)
                kind = "property" if term.concept == "property" else "type"
                if key not in mappings.terms:
                    result = kbmod.map_type_or_property(
                        surface, kind, self.kb, self.vectors, self.thresholds)
                    mappings.terms[key] = result.uris
        for app in statement.functions():
            prop = None
            if app.category == "quality":
                entry = self.lexicons.qualities.get(app.name.lower())
                if entry is not None and entry.property_label != "count":
                    prop = entry.property_label
            elif app.category == "comparison":
                prop = app.property_label
            if prop and prop not in mappings.properties:
                result = kbmod.map_type_or_property(prop, "property", self.kb,
                                                    self.vectors,
                                                    self.thresholds)
                mappings.properties[prop] = result.uris
        return mappings
