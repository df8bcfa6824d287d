"""Annotation interchange format: one JSON document per question.

This is the boundary between the compiler and whatever produced the syntactic
annotations (the built-in tagger, the bundled goldens, or an external parser
writing the same schema). Field names are fixed:

    {
      "question": "...",
      "tokens": [{"index": 0, "text": "How", "pos": "WRB", "lemma": "how"}, ...],
      "entities": [{"start": 9, "end": 10, "kind": "place"}, ...],
      "constituency": ["SBARQ", ["WHNP", 0, 1], ...],   // leaves are token indices
      "dependencies": [{"head": -1, "dep": 3, "label": "root"}, ...]
    }

Token spans are half-open ``[start, end)`` index ranges. The constituency
tree is a nested ``[label, child...]`` array whose leaves are token indices;
the root must cover all tokens. Exactly one dependency arc has head -1 (the
root).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import jsonschema


@dataclass(frozen=True)
class Token:
    index: int
    text: str
    pos: str
    lemma: str


@dataclass(frozen=True)
class EntitySpan:
    start: int
    end: int
    kind: str  # "place" | "event"


@dataclass(frozen=True)
class DependencyArc:
    head: int  # -1 for root
    dep: int
    label: str


@dataclass
class AnnotationDocument:
    question: str
    tokens: list
    entities: list
    constituency: list  # nested [label, child...] with int leaves
    dependencies: list

    def token_texts(self, start: int, end: int) -> str:
        return " ".join(t.text for t in self.tokens[start:end])


def _load_schema() -> dict:
    data = resources.files("placeql.data").joinpath("interchange.schema.json")
    return json.loads(data.read_text(encoding="utf-8"))


_SCHEMA = None


def schema() -> dict:
    global _SCHEMA
    if _SCHEMA is None:
        _SCHEMA = _load_schema()
    return _SCHEMA


def validate_document(obj: dict) -> None:
    """Schema check plus the structural invariants a schema cannot express."""
    jsonschema.validate(obj, schema())
    n = len(obj["tokens"])
    for i, tok in enumerate(obj["tokens"]):
        if tok["index"] != i:
            raise ValueError("token indices must be contiguous from 0")
        if not tok["text"]:
            raise ValueError("token %d has empty text" % i)
    for ent in obj["entities"]:
        if not (0 <= ent["start"] < ent["end"] <= n):
            raise ValueError("entity span %r out of range" % (ent,))
    roots = [d for d in obj["dependencies"] if d["head"] == -1]
    if obj["dependencies"] and len(roots) != 1:
        raise ValueError("dependency arcs must have exactly one root")
    for d in obj["dependencies"]:
        if not (0 <= d["dep"] < n) or not (-1 <= d["head"] < n):
            raise ValueError("dependency arc %r out of range" % (d,))
    leaves = []
    _collect_leaves(obj["constituency"], leaves)
    if leaves != list(range(n)):
        raise ValueError("constituency leaves must cover tokens 0..%d in order" % (n - 1))


def _collect_leaves(node, out) -> None:
    if isinstance(node, int):
        out.append(node)
        return
    if not isinstance(node, list) or not node or not isinstance(node[0], str):
        raise ValueError("malformed constituency node: %r" % (node,))
    for child in node[1:]:
        _collect_leaves(child, out)


def from_json(obj: dict) -> AnnotationDocument:
    validate_document(obj)
    return AnnotationDocument(
        question=obj["question"],
        tokens=[Token(t["index"], t["text"], t["pos"], t["lemma"])
                for t in obj["tokens"]],
        entities=[EntitySpan(e["start"], e["end"], e["kind"])
                  for e in obj["entities"]],
        constituency=obj["constituency"],
        dependencies=[DependencyArc(d["head"], d["dep"], d["label"])
                      for d in obj["dependencies"]],
    )


def to_json(doc: AnnotationDocument) -> dict:
    return {
        "question": doc.question,
        "tokens": [{"index": t.index, "text": t.text, "pos": t.pos,
                    "lemma": t.lemma} for t in doc.tokens],
        "entities": [{"start": e.start, "end": e.end, "kind": e.kind}
                     for e in doc.entities],
        "constituency": doc.constituency,
        "dependencies": [{"head": d.head, "dep": d.dep, "label": d.label}
                         for d in doc.dependencies],
    }


def loads(text: str) -> AnnotationDocument:
    return from_json(json.loads(text))


def dumps(doc: AnnotationDocument, pretty: bool = False) -> str:
    obj = to_json(doc)
    if pretty:
        return json.dumps(obj, indent=2, ensure_ascii=False)
    return json.dumps(obj, ensure_ascii=False)
