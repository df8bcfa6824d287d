"""Lexicon and word-vector tables driving the deterministic annotator.

All files are UTF-8 TSV. Single-class lexicons are ``term<TAB>class`` rows;
richer tables (comparisons, qualities) append extra columns. Vector files are
``token<TAB>v1 v2 ... vn``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .encoding import EncodingClass


@dataclass(frozen=True)
class PrepPattern:
    """Tokenized preposition pattern; ``*`` matches one or more tokens."""

    tokens: tuple
    cls: EncodingClass

    @property
    def has_wildcard(self) -> bool:
        return "*" in self.tokens

    def symbol_tokens(self) -> tuple:
        return tuple(t for t in self.tokens if t != "*")


@dataclass(frozen=True)
class ComparisonPattern:
    tokens: tuple
    operator: str            # one of < > = <= >=
    property_label: str | None = None   # e.g. "elevation" for "higher than"


@dataclass(frozen=True)
class QualityEntry:
    lemma: str
    degree: str              # base | comparative | superlative
    property_label: str      # property the adjective ranks by; "count" for most/fewest
    direction: str           # asc | desc | none


@dataclass
class Lexicons:
    place_types: set = field(default_factory=set)
    event_types: set = field(default_factory=set)
    active_verbs: set = field(default_factory=set)
    stative_verbs: set = field(default_factory=set)
    spatial_preps: list = field(default_factory=list)
    temporal_preps: list = field(default_factory=list)
    conjunctions: dict = field(default_factory=dict)
    question_words: dict = field(default_factory=dict)
    comparisons: list = field(default_factory=list)
    qualities: dict = field(default_factory=dict)
    gazetteer: dict = field(default_factory=dict)   # name -> "place" | "event"
    copulas: set = field(default_factory=lambda: {"be"})

    def __post_init__(self):
        overlap = self.active_verbs & self.stative_verbs
        if overlap:
            raise ValueError("verbs in both active and stative lexicons: %s"
                             % sorted(overlap))

    def is_place_type(self, lemma: str) -> bool:
        return lemma in self.place_types

    def is_event_type(self, lemma: str) -> bool:
        # place_type wins when a term is in both lists (the bundled data has
        # zero events, so priority is only a tie-break).
        return lemma in self.event_types and lemma not in self.place_types


def _read_tsv(path) -> list:
    rows = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip("\n")
        if not line or line.startswith("#"):
            continue
        rows.append(line.split("\t"))
    return rows


def _term_set(path) -> set:
    return {row[0].strip().lower() for row in _read_tsv(path)}


def _prep_patterns(path) -> list:
    pats = []
    for row in _read_tsv(path):
        cls = EncodingClass.from_code(row[1].strip()) if len(row) > 1 else \
            EncodingClass.SPATIAL_RELATION
        pats.append(PrepPattern(tuple(row[0].lower().split()), cls))
    # longest patterns first so "in * radius of" beats "in"
    pats.sort(key=lambda p: (-len(p.tokens), p.tokens))
    return pats


def load_lexicons(root) -> Lexicons:
    """Load all lexicon tables from a directory of TSV files."""
    root = Path(root)
    conjunctions = {}
    for row in _read_tsv(root / "conjunctions.tsv"):
        conjunctions[row[0].lower()] = EncodingClass.from_code(row[1])
    question_words = {}
    for row in _read_tsv(root / "question_words.tsv"):
        question_words[tuple(row[0].lower().split())] = EncodingClass.from_code(row[1])
    comparisons = []
    for row in _read_tsv(root / "comparisons.tsv"):
        prop = row[2].strip() if len(row) > 2 and row[2].strip() else None
        comparisons.append(ComparisonPattern(tuple(row[0].lower().split()),
                                             row[1].strip(), prop))
    comparisons.sort(key=lambda c: (-len(c.tokens), c.tokens))
    qualities = {}
    for row in _read_tsv(root / "qualities.tsv"):
        qualities[row[0].lower()] = QualityEntry(row[0].lower(), row[1],
                                                 row[2], row[3])
    gazetteer = {}
    names_path = root / "names.tsv"
    if names_path.exists():
        for row in _read_tsv(names_path):
            gazetteer[row[0]] = row[1] if len(row) > 1 else "place"
    return Lexicons(
        place_types=_term_set(root / "place_types.tsv"),
        event_types=_term_set(root / "event_types.tsv"),
        active_verbs=_term_set(root / "active_verbs.tsv"),
        stative_verbs=_term_set(root / "stative_verbs.tsv"),
        spatial_preps=_prep_patterns(root / "spatial_preps.tsv"),
        temporal_preps=_prep_patterns(root / "temporal_preps.tsv"),
        conjunctions=conjunctions,
        question_words=question_words,
        comparisons=comparisons,
        qualities=qualities,
        gazetteer=gazetteer,
    )


class WordVectorTable:
    """Fixed-dimension static word vectors with cosine similarity."""

    def __init__(self, entries: dict, dim: int):
        self.entries = entries
        self.dim = dim
        for tok, vec in entries.items():
            if len(vec) != dim:
                raise ValueError("vector for %r has length %d, expected %d"
                                 % (tok, len(vec), dim))
            if not all(math.isfinite(v) for v in vec):
                raise ValueError("non-finite vector for %r" % tok)

    def __contains__(self, token: str) -> bool:
        return token.lower() in self.entries

    def get(self, token: str):
        return self.entries.get(token.lower())

    def mean_vector(self, tokens):
        """Mean of the known tokens' vectors; None if none are known."""
        vecs = [self.entries[t.lower()] for t in tokens if t.lower() in self.entries]
        if not vecs:
            return None
        return [sum(col) / len(vecs) for col in zip(*vecs)]

    @staticmethod
    def cosine(a, b) -> float:
        dot = sum(x * y for x, y in zip(a, b))
        na = math.sqrt(sum(x * x for x in a))
        nb = math.sqrt(sum(y * y for y in b))
        if na == 0.0 or nb == 0.0:
            return 0.0
        return dot / (na * nb)

    def similarity(self, tokens_a, tokens_b) -> float:
        va = self.mean_vector(tokens_a)
        vb = self.mean_vector(tokens_b)
        if va is None or vb is None:
            return 0.0
        return self.cosine(va, vb)

    @classmethod
    def load(cls, path) -> "WordVectorTable":
        entries = {}
        dim = None
        for row in _read_tsv(path):
            token = row[0].lower()
            vec = [float(v) for v in row[1].split()]
            if dim is None:
                dim = len(vec)
            entries[token] = vec
        return cls(entries, dim or 0)
