"""Intent resolution: what a question asks for.

Four heuristics: the question word fixes the kind (and, for yes/no
questions, the Boolean answer domain); candidates inside location phrases
(and properties inside comparison/verb phrases) are invalid; among valid
candidates the least specific wins (properties, then types, then names);
remaining ties go to the earliest token position. The validity filter runs
before the specificity ranking -- that is what makes the ranking operate
"among valid candidates".

Open point kept from the source material: when a question has both a
superlative and a how+adjective word, the question word wins (how many
beats the superlative).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .encoding import (
    EncodingClass,
    NAME_CODES,
    TYPE_CODES,
    VERB_CODES,
)
from .errors import NoIntent, UnsupportedIntent


@dataclass
class Intent:
    kind: str  # ask_boolean | select_entities | select_location | count | distance | select_property
    targets: list = field(default_factory=list)  # ConceptRefs
    operator: str | None = None  # COUNT | DISTANCE
    detail: str | None = None    # e.g. "date" for when-questions

_SPECIFICITY = {
    EncodingClass.PROPERTY: 0,
    EncodingClass.PLACE_TYPE: 1,
    EncodingClass.EVENT_TYPE: 1,
    EncodingClass.PLACE_NAME: 2,
    EncodingClass.EVENT_NAME: 2,
}


def specificity_rank(cls: EncodingClass) -> int:
    return _SPECIFICITY[cls]


def _excluded(concept, ectree, annotations) -> bool:
    for ph in ectree.phrases:
        if ph.kind == "location" and \
                ph.node.start <= concept.start and concept.end <= ph.node.end:
            return True
        if ph.kind == "comparison" and \
                ph.node.start <= concept.start and concept.end <= ph.node.end:
            return True
    if concept.cls is EncodingClass.PROPERTY:
        # property governed by an activity/situation verb ("to buy [books]",
        # "have a [population] ...") is a criterion, not the intent; allow
        # up to two unannotated tokens (determiners) in between
        for ann in annotations:
            if ann.cls not in VERB_CODES:
                continue
            if ann.end <= concept.start <= ann.end + 2:
                gap_covered = any(
                    other.start < concept.start and other.end > ann.end and
                    other is not ann
                    for other in annotations
                    if other.start >= ann.end)
                if not gap_covered:
                    return True
    return False


def _valid_candidates(concepts, ectree):
    annotations = ectree.annotations
    return [c for c in concepts if not _excluded(c, ectree, annotations)]


def _pick(valid):
    if not valid:
        raise NoIntent("no intent candidate survives phrase filtering")
    best_rank = min(specificity_rank(c.cls) for c in valid)
    ranked = [c for c in valid if specificity_rank(c.cls) == best_rank]
    return min(ranked, key=lambda c: c.start)


def resolve_intent(qword: EncodingClass | None, concepts: list, ectree,
                   tokens, qword_span=None) -> Intent:
    """Resolve the question's intent from its word, concepts and phrases."""
    if qword is EncodingClass.IS_ARE:
        return Intent(kind="ask_boolean")
    if qword is EncodingClass.WHY:
        raise UnsupportedIntent("why-questions have no retrieval semantics")
    if qword is EncodingClass.HOW:
        raise UnsupportedIntent("bare how-questions are not supported")
    if qword is None:
        raise NoIntent("no question word found")

    valid = _valid_candidates(concepts, ectree)

    if qword is EncodingClass.HOW_ADJ:
        adjective = ""
        if qword_span is not None:
            words = [t.text.lower() for t in tokens[qword_span[0]:qword_span[1]]]
            adjective = words[-1] if len(words) > 1 else ""
        if adjective == "many":
            target = _pick(valid)
            return Intent(kind="count", targets=[target], operator="COUNT")
        if adjective == "far":
            names = [c for c in concepts if c.cls in NAME_CODES]
            if len(names) < 2:
                raise NoIntent("distance question needs two named concepts")
            return Intent(kind="distance", targets=names[:2], operator="DISTANCE")
        target = _pick(valid)
        return Intent(kind="select_property", targets=[target], detail=adjective)

    if qword is EncodingClass.WHERE:
        placelike = [c for c in valid if c.cls in NAME_CODES | TYPE_CODES]
        target = _pick(placelike)
        return Intent(kind="select_location", targets=[target])

    if qword is EncodingClass.WHEN:
        target = _pick(valid)
        return Intent(kind="select_property", targets=[target], detail="date")

    # what / which
    target = _pick(valid)
    if target.cls is EncodingClass.PROPERTY:
        return Intent(kind="select_property", targets=[target])
    return Intent(kind="select_entities", targets=[target])
