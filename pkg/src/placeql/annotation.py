"""Assigning encoding classes to tokens and phrases.

The extractor works purely over the token/POS/entity layer of an annotation
document. Multi-token relation patterns ("in * radius of") produce one
annotation spanning the whole range; measure tokens inside the wildcard keep
their own nested number/property annotations, so spans are either disjoint
or nested, never partially overlapping.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import morph
from .encoding import (
    EncodingClass,
    CONCEPT_CODES,
    NAME_CODES,
    OPERATOR_CLASSES,
    TYPE_CODES,
)
from .errors import UnknownVerb
from .lexicon import Lexicons, WordVectorTable


@dataclass(frozen=True)
class EncodingAnnotation:
    start: int
    end: int  # half-open
    cls: EncodingClass
    source: str  # ingested | lexicon | rule

    @property
    def span(self):
        return (self.start, self.end)

    def covers(self, index: int) -> bool:
        return self.start <= index < self.end


_NOUN_TAGS = {"NN", "NNS"}
_PROPER_TAGS = {"NNP", "NNPS"}
_VERB_TAGS = {"VB", "VBZ", "VBP", "VBD", "VBN", "VBG"}
_ADJ_TAGS = {"JJ", "JJR", "JJS"}


def classify_verb(verb: str, lexicons: Lexicons,
                  vectors: WordVectorTable) -> EncodingClass:
    """Activity vs situation; exact lexicon hits win over vector similarity."""
    lemma = morph.verb_lemma(verb)
    if lemma in lexicons.active_verbs:
        return EncodingClass.ACTIVITY
    if lemma in lexicons.stative_verbs:
        return EncodingClass.SITUATION
    query = vectors.get(lemma)
    if query is None:
        raise UnknownVerb("verb %r is in neither verb lexicon nor the vector table"
                          % verb)
    best_cls = None
    best_sim = float("-inf")
    for cls, entries in ((EncodingClass.ACTIVITY, lexicons.active_verbs),
                         (EncodingClass.SITUATION, lexicons.stative_verbs)):
        for entry in sorted(entries):
            ref = vectors.get(entry)
            if ref is None:
                continue
            sim = WordVectorTable.cosine(query, ref)
            if sim > best_sim:
                best_sim = sim
                best_cls = cls
    if best_cls is None:
        raise UnknownVerb("no lexicon verb has a vector to compare %r against"
                          % verb)
    return best_cls


def _match_literal(tokens, pos, literal) -> bool:
    return pos < len(tokens) and tokens[pos].text.lower() == literal


def _match_pattern(tokens, start, pattern_tokens):
    """Match a (possibly wildcarded) pattern at ``start``.

    Returns (end, literal_positions) or None. A wildcard matches one or more
    tokens, as few as possible.
    """
    pos = start
    literals = []
    i = 0
    while i < len(pattern_tokens):
        pat = pattern_tokens[i]
        if pat == "*":
            rest = pattern_tokens[i + 1:]
            if not rest:
                return None
            gap = pos + 1  # wildcard consumes at least one token
            while gap < len(tokens):
                trial = _match_pattern(tokens, gap, rest)
                if trial is not None:
                    end, sub = trial
                    return end, literals + sub
                gap += 1
            return None
        if not _match_literal(tokens, pos, pat):
            return None
        literals.append(pos)
        pos += 1
        i += 1
    return pos, literals


class _State:
    def __init__(self, tokens, entities):
        self.tokens = tokens
        self.consumed = [False] * len(tokens)
        self.entity_at = {}
        for ent in entities:
            for i in range(ent.start, ent.end):
                self.entity_at[i] = ent
        self.annotations = []
        self.concept_class = {}  # token index -> concept EncodingClass

    def add(self, start, end, cls, source):
        self.annotations.append(EncodingAnnotation(start, end, cls, source))
        if cls in CONCEPT_CODES:
            for i in range(start, end):
                self.concept_class[i] = cls

    def consume(self, positions):
        for i in positions:
            self.consumed[i] = True


def extract_encodings(tokens, entities, lexicons: Lexicons,
                      vectors: WordVectorTable) -> list:
    """Label every recognizable token/phrase with its encoding class.

    Unrecognized tokens stay unlabeled; the result is sorted by span and is
    deterministic for identical inputs.
    """
    st = _State(tokens, entities)
    _label_question_word(st, lexicons)
    _label_entities(st, entities)
    _label_comparisons(st, lexicons)
    _label_prepositions(st, lexicons)
    _label_conjunctions(st, lexicons)
    _label_nouns(st, lexicons)
    _label_numbers(st)
    _label_verbs(st, lexicons, vectors)
    _label_adjectives(st, lexicons)
    out = sorted(st.annotations, key=lambda a: (a.start, a.end, a.cls.value))
    _check_overlaps(out)
    return out


def _label_question_word(st, lexicons):
    patterns = sorted(lexicons.question_words.items(),
                      key=lambda kv: -len(kv[0]))
    for start in (0, 1):
        for pat, cls in patterns:
            m = _match_pattern(st.tokens, start, pat)
            if m is not None:
                end, literals = m
                st.add(start, end, cls, "lexicon")
                st.consume(literals)
                return


def _label_entities(st, entities):
    for ent in entities:
        cls = EncodingClass.PLACE_NAME if ent.kind == "place" else \
            EncodingClass.EVENT_NAME
        st.add(ent.start, ent.end, cls, "ingested")
        st.consume(range(ent.start, ent.end))


def _label_comparisons(st, lexicons):
    i = 0
    while i < len(st.tokens):
        if st.consumed[i]:
            i += 1
            continue
        for pat in lexicons.comparisons:
            m = _match_pattern(st.tokens, i, pat.tokens)
            if m is not None:
                end, literals = m
                st.add(i, end, OPERATOR_CLASSES[pat.operator], "lexicon")
                st.consume(literals)
                i = end - 1
                break
        i += 1


def _reference_class(st, lexicons, start, end):
    """What a preposition span refers to: first concept/date at or after it."""
    for j in range(end, len(st.tokens)):
        tok = st.tokens[j]
        if j in st.entity_at:
            return EncodingClass.PLACE_NAME if st.entity_at[j].kind == "place" \
                else EncodingClass.EVENT_NAME
        if morph.is_year_token(tok.text):
            return EncodingClass.DATE
        if tok.pos in _PROPER_TAGS:
            return EncodingClass.PLACE_NAME
        if tok.pos in _NOUN_TAGS:
            lemma = morph.singularize(tok.lemma or tok.text)
            if lexicons.is_place_type(lemma):
                return EncodingClass.PLACE_TYPE
            if lexicons.is_event_type(lemma):
                return EncodingClass.EVENT_TYPE
            # a generic noun might be a measure unit inside the wildcard;
            # keep scanning for an actual place/event/date reference
            continue
        if tok.pos == "IN":
            continue
    return None


def _label_prepositions(st, lexicons):
    i = 0
    while i < len(st.tokens):
        if st.consumed[i] or st.tokens[i].pos != "IN":
            i += 1
            continue
        matched_end = None
        for pat in lexicons.spatial_preps:
            m = _match_pattern(st.tokens, i, pat.tokens)
            if m is None:
                continue
            end, literals = m
            if any(st.consumed[p] for p in literals):
                continue
            ref = _reference_class(st, lexicons, i, end)
            if ref in NAME_CODES | TYPE_CODES:
                st.add(i, end, EncodingClass.SPATIAL_RELATION, "lexicon")
                st.consume(literals)
                matched_end = end
                break
            if ref is EncodingClass.DATE and _is_temporal(lexicons, pat.tokens):
                st.add(i, end, EncodingClass.TEMPORAL_RELATION, "lexicon")
                st.consume(literals)
                matched_end = end
                break
        if matched_end is None:
            # spatial pattern missed: a purely temporal preposition may still
            # refer to a date
            for pat in lexicons.temporal_preps:
                m = _match_pattern(st.tokens, i, pat.tokens)
                if m is None:
                    continue
                end, literals = m
                if any(st.consumed[p] for p in literals):
                    continue
                if _reference_class(st, lexicons, i, end) is EncodingClass.DATE:
                    st.add(i, end, EncodingClass.TEMPORAL_RELATION, "lexicon")
                    st.consume(literals)
                    matched_end = end
                    break
        i = matched_end if matched_end is not None else i + 1


def _is_temporal(lexicons, pattern_tokens) -> bool:
    return any(p.tokens == pattern_tokens for p in lexicons.temporal_preps)


def _label_conjunctions(st, lexicons):
    for i, tok in enumerate(st.tokens):
        if st.consumed[i]:
            continue
        cls = lexicons.conjunctions.get(tok.text.lower())
        if cls is not None:
            st.add(i, i + 1, cls, "lexicon")
            st.consumed[i] = True


def _label_nouns(st, lexicons):
    for i, tok in enumerate(st.tokens):
        if st.consumed[i] or i in st.entity_at:
            continue
        if tok.pos in _PROPER_TAGS:
            # proper noun the NER missed: treat as a place name
            st.add(i, i + 1, EncodingClass.PLACE_NAME, "rule")
            st.consumed[i] = True
            continue
        if tok.pos not in _NOUN_TAGS:
            continue
        lemma = morph.singularize(tok.lemma or tok.text)
        if lexicons.is_place_type(lemma):
            st.add(i, i + 1, EncodingClass.PLACE_TYPE, "lexicon")
        elif lexicons.is_event_type(lemma):
            st.add(i, i + 1, EncodingClass.EVENT_TYPE, "lexicon")
        else:
            # unlabelled noun phrases fall back to properties
            st.add(i, i + 1, EncodingClass.PROPERTY, "rule")
        st.consumed[i] = True


def _label_numbers(st):
    for i, tok in enumerate(st.tokens):
        if st.consumed[i]:
            continue
        if tok.pos == "CD" or morph.is_number_token(tok.text):
            cls = EncodingClass.DATE if morph.is_year_token(tok.text) else \
                EncodingClass.NUMBER
            st.add(i, i + 1, cls, "rule")
            st.consumed[i] = True


def _label_verbs(st, lexicons, vectors):
    for i, tok in enumerate(st.tokens):
        if st.consumed[i] or tok.pos not in _VERB_TAGS:
            continue
        lemma = morph.verb_lemma(tok.lemma or tok.text)
        if lemma in lexicons.copulas or lemma == "do":
            continue
        try:
            cls = classify_verb(lemma, lexicons, vectors)
        except UnknownVerb:
            continue
        st.add(i, i + 1, cls, "lexicon")
        st.consumed[i] = True


def _nearest_concept(st, i):
    for j in range(i + 1, len(st.tokens)):
        if j in st.concept_class:
            return st.concept_class[j]
        if st.tokens[j].pos == "IN":
            break
    for j in range(i - 1, -1, -1):
        if j in st.concept_class:
            return st.concept_class[j]
    return None


def _label_adjectives(st, lexicons):
    for i, tok in enumerate(st.tokens):
        if st.consumed[i] or tok.pos not in _ADJ_TAGS:
            continue
        word = tok.text.lower()
        if tok.pos == "JJR" and word not in lexicons.qualities:
            continue  # bare comparatives belong to comparison patterns
        if tok.pos == "JJ" and word not in lexicons.qualities:
            continue
        ref = _nearest_concept(st, i)
        if ref is None:
            continue
        if ref in {EncodingClass.PLACE_NAME, EncodingClass.PLACE_TYPE}:
            cls = EncodingClass.PLACE_QUALITY
        else:
            cls = EncodingClass.OBJECT_QUALITY
        st.add(i, i + 1, cls, "lexicon")
        st.consumed[i] = True


def _check_overlaps(annotations):
    for a in annotations:
        for b in annotations:
            if a is b:
                continue
            disjoint = a.end <= b.start or b.end <= a.start
            nested = (a.start <= b.start and b.end <= a.end) or \
                     (b.start <= a.start and a.end <= b.end)
            if not (disjoint or nested):
                raise AssertionError("partially overlapping annotations: %r / %r"
                                     % (a, b))
