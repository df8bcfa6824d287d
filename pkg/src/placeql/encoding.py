"""The encoding schema: the closed set of classes assignable to question tokens.

Codes are single characters (plus the two-character comparison codes and
``n`` for numbers, see the README for the published table). Each code has a
stable human-readable name used in reports.
"""

from __future__ import annotations

import enum


class EncodingClass(enum.Enum):
    WHERE = "1"
    WHAT = "2"
    WHICH = "3"
    WHEN = "4"
    HOW = "5"
    HOW_ADJ = "6"
    WHY = "7"
    IS_ARE = "8"
    DATE = "d"
    NUMBER = "n"
    PLACE_NAME = "P"
    PLACE_TYPE = "p"
    EVENT_NAME = "E"
    EVENT_TYPE = "e"
    PROPERTY = "o"
    ACTIVITY = "a"
    SITUATION = "s"
    SPATIAL_RELATION = "R"
    TEMPORAL_RELATION = "r"
    PLACE_QUALITY = "Q"
    OBJECT_QUALITY = "q"
    LESS = "<"
    GREATER = ">"
    EQUAL = "="
    AT_MOST = "<="
    AT_LEAST = ">="
    AND = "&"
    OR = "|"
    NEGATION = "!"

    @property
    def code(self) -> str:
        return self.value

    @property
    def label(self) -> str:
        return _LABELS[self]

    @classmethod
    def from_code(cls, code: str) -> "EncodingClass":
        return cls(code)


_LABELS = {
    EncodingClass.WHERE: "where",
    EncodingClass.WHAT: "what",
    EncodingClass.WHICH: "which",
    EncodingClass.WHEN: "when",
    EncodingClass.HOW: "how",
    EncodingClass.HOW_ADJ: "how+adj",
    EncodingClass.WHY: "why",
    EncodingClass.IS_ARE: "is/are",
    EncodingClass.DATE: "date",
    EncodingClass.NUMBER: "number",
    EncodingClass.PLACE_NAME: "place name",
    EncodingClass.PLACE_TYPE: "place type",
    EncodingClass.EVENT_NAME: "event name",
    EncodingClass.EVENT_TYPE: "event type",
    EncodingClass.PROPERTY: "properties",
    EncodingClass.ACTIVITY: "activity",
    EncodingClass.SITUATION: "situation",
    EncodingClass.SPATIAL_RELATION: "spatial relation",
    EncodingClass.TEMPORAL_RELATION: "temporal relation",
    EncodingClass.PLACE_QUALITY: "place quality",
    EncodingClass.OBJECT_QUALITY: "object quality",
    EncodingClass.LESS: "comparison <",
    EncodingClass.GREATER: "comparison >",
    EncodingClass.EQUAL: "comparison =",
    EncodingClass.AT_MOST: "comparison <=",
    EncodingClass.AT_LEAST: "comparison >=",
    EncodingClass.AND: "and",
    EncodingClass.OR: "or",
    EncodingClass.NEGATION: "negation",
}

# Groupings used across the pipeline.
QUESTION_CODES = {
    EncodingClass.WHERE, EncodingClass.WHAT, EncodingClass.WHICH,
    EncodingClass.WHEN, EncodingClass.HOW, EncodingClass.HOW_ADJ,
    EncodingClass.WHY, EncodingClass.IS_ARE,
}
NAME_CODES = {EncodingClass.PLACE_NAME, EncodingClass.EVENT_NAME}
TYPE_CODES = {EncodingClass.PLACE_TYPE, EncodingClass.EVENT_TYPE}
CONCEPT_CODES = NAME_CODES | TYPE_CODES | {EncodingClass.PROPERTY}
RELATION_CODES = {EncodingClass.SPATIAL_RELATION, EncodingClass.TEMPORAL_RELATION}
QUALITY_CODES = {EncodingClass.PLACE_QUALITY, EncodingClass.OBJECT_QUALITY}
COMPARISON_CODES = {
    EncodingClass.LESS, EncodingClass.GREATER, EncodingClass.EQUAL,
    EncodingClass.AT_MOST, EncodingClass.AT_LEAST,
}
CONJUNCTION_CODES = {EncodingClass.AND, EncodingClass.OR, EncodingClass.NEGATION}
VERB_CODES = {EncodingClass.ACTIVITY, EncodingClass.SITUATION}

ALL_CODES = {c.value for c in EncodingClass}

COMPARISON_OPERATORS = {
    EncodingClass.LESS: "<",
    EncodingClass.GREATER: ">",
    EncodingClass.EQUAL: "=",
    EncodingClass.AT_MOST: "<=",
    EncodingClass.AT_LEAST: ">=",
}
OPERATOR_CLASSES = {v: k for k, v in COMPARISON_OPERATORS.items()}
