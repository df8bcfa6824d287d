"""Corpus entries: questions with golden artifacts for every stage.

One JSON file per entry. The loader verifies mutual consistency (the golden
query must parse and execute to the golden answer on the fixture KB; the
golden logical text must round-trip through the reference parser) before any
evaluation runs.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import interchange
from .encoding import ALL_CODES
from .errors import CorpusError
from .geoeval import execute, parse_query
from .logical import parse_logical, serialize
from .scoring import ScoreReport, canonical_logical_text, score_entry


@dataclass
class CorpusEntry:
    id: str
    question: str
    tags: list
    annotation: dict          # interchange JSON (golden)
    encodings: list           # [{"start","end","code"}]
    logical: str
    query: str
    answer: dict              # ResultSet JSON
    concepts: dict = field(default_factory=dict)   # name -> [uri]
    mappings: dict = field(default_factory=dict)   # surface -> [uri]


def load_corpus(path) -> list:
    path = Path(path)
    files = sorted(path.glob("q*.json"))
    if not files:
        raise CorpusError("no corpus entries under %s" % path)
    entries = []
    for f in files:
        try:
            raw = json.loads(f.read_text(encoding="utf-8"))
            entry = CorpusEntry(**raw)
            interchange.validate_document(entry.annotation)
            for e in entry.encodings:
                if e["code"] not in ALL_CODES:
                    raise ValueError("unknown encoding code %r" % e["code"])
        except (ValueError, TypeError, KeyError) as exc:
            raise CorpusError("malformed corpus entry %s: %s" % (f.name, exc)) \
                from exc
        entries.append(entry)
    return entries


def self_check(entries, kb) -> None:
    """Golden artifacts must be mutually consistent on the fixture KB."""
    for entry in entries:
        stmt = parse_logical(entry.logical)
        round_tripped = canonical_logical_text(serialize(stmt))
        if round_tripped != canonical_logical_text(entry.logical):
            raise CorpusError("%s: golden logical text does not round-trip"
                              % entry.id)
        ast = parse_query(entry.query)
        result = execute(ast, kb).to_json()
        if result != entry.answer:
            raise CorpusError("%s: golden query executes to %r, golden answer is %r"
                              % (entry.id, result, entry.answer))


def evaluate(compiler, entries, mode: str = "ingested",
             jobs: int = 4) -> ScoreReport:
    """Compile every entry (golden annotations or raw text) and score it."""
    report = ScoreReport(mode=mode)
    if compiler.kb is None:
        compiler.load_kb()
    self_check(entries, compiler.kb)

    def produce(entry):
        produced = {}
        try:
            if mode == "ingested":
                doc = interchange.from_json(entry.annotation)
                result = compiler.compile(doc=doc)
            else:
                result = compiler.compile(entry.question)
            produced["encodings"] = result.encodings
            produced["statement"] = result.statement
            produced["logical_text"] = result.logical_text
            produced["query_text"] = result.query_text
            produced["concepts"] = _concepts_of(result)
            produced["mappings"] = _mappings_of(result)
            ast = parse_query(result.query_text)
            produced["answer"] = execute(ast, compiler.kb).to_json()
        except Exception as exc:  # scored as a miss, reported once
            produced["error"] = "%s: %s" % (type(exc).__name__, exc)
        return produced

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        outcomes = list(pool.map(produce, entries))
    for entry, produced in sorted(zip(entries, outcomes),
                                  key=lambda pair: pair[0].id):
        if "error" in produced:
            report.failures.append("%s: %s" % (entry.id, produced["error"]))
        score_entry(report, entry, produced, compiler.lexicons)
    return report


def _constant_names(stmt) -> set:
    return {d.term.name for d in stmt.declarations()
            if d.term.kind == "constant"}


def _concepts_of(result) -> dict:
    stmt, mappings = result.statement, result.mappings
    if stmt is None or mappings is None:
        return {}
    constants = _constant_names(stmt)
    return {name: list(uris) for name, uris in mappings.terms.items()
            if name in constants}


def _mappings_of(result) -> dict:
    stmt, mappings = result.statement, result.mappings
    if stmt is None or mappings is None:
        return {}
    out = {}
    constants = _constant_names(stmt)
    for key, uris in mappings.terms.items():
        if key not in constants:
            surface = stmt.term_surfaces.get(key, key)
            out[surface] = list(uris)
    for label, uris in mappings.properties.items():
        out[label] = list(uris)
    return out
