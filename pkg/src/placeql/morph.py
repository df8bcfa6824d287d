"""Small rule-based English morphology: enough for the bundled corpus.

Covers noun singularization, verb lemmas and the number words that appear in
questions. Irregulars live in explicit tables; everything else goes through
suffix rules.
"""

from __future__ import annotations

import re

_IRREGULAR_NOUNS = {
    "cities": "city",
    "counties": "county",
    "countries": "country",
    "churches": "church",
    "beaches": "beach",
    "pharmacies": "pharmacy",
    "glasses": "glass",
    "addresses": "address",
    "buses": "bus",
    "men": "man",
    "women": "woman",
    "children": "child",
    "people": "person",
    "feet": "foot",
    "graveyards": "graveyard",
}

_IRREGULAR_VERBS = {
    "is": "be", "are": "be", "was": "be", "were": "be", "been": "be", "be": "be",
    "has": "have", "have": "have", "had": "have",
    "does": "do", "do": "do", "did": "do",
    "crosses": "cross", "crossed": "cross",
    "touches": "touch", "touched": "touch",
    "lies": "lie", "lay": "lie",
    "occurred": "occur",
    "bought": "buy",
    "saw": "see", "seen": "see",
    "went": "go",
}

_UNCOUNTABLE = {"series", "species", "news", "cross", "gas", "bus", "atlas",
                "radius"}


def singularize(noun: str) -> str:
    w = noun.lower()
    if w in _IRREGULAR_NOUNS:
        return _IRREGULAR_NOUNS[w]
    if w in _UNCOUNTABLE:
        return w
    if w.endswith("ies") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith(("ches", "shes", "sses", "xes", "zes")):
        return w[:-2]
    if w.endswith("s") and not w.endswith("ss") and len(w) > 3:
        return w[:-1]
    return w


def is_plural(noun: str) -> bool:
    w = noun.lower()
    return singularize(w) != w


def verb_lemma(verb: str) -> str:
    w = verb.lower()
    if w in _IRREGULAR_VERBS:
        return _IRREGULAR_VERBS[w]
    if w.endswith("ies") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith(("ches", "shes", "sses", "xes", "zes")):
        return w[:-2]
    if w.endswith("ing") and len(w) > 5:
        return w[:-3]
    if w.endswith("ed") and len(w) > 4:
        return w[:-2]
    if w.endswith("s") and not w.endswith("ss") and len(w) > 3:
        return w[:-1]
    return w


_NUMBER_WORDS = {
    "zero": 0, "one": 1, "two": 2, "three": 3, "four": 4, "five": 5,
    "six": 6, "seven": 7, "eight": 8, "nine": 9, "ten": 10, "eleven": 11,
    "twelve": 12, "twenty": 20, "thirty": 30, "forty": 40, "fifty": 50,
    "hundred": 100, "thousand": 1000, "million": 1000000,
}

_NUMERIC_RE = re.compile(r"^\d+(\.\d+)?$")


def is_number_token(text: str) -> bool:
    return bool(_NUMERIC_RE.match(text)) or text.lower() in _NUMBER_WORDS


def number_value(text: str):
    """Numeric value of a token; digits win over number words."""
    if _NUMERIC_RE.match(text):
        v = float(text)
        return int(v) if v.is_integer() else v
    if text.lower() in _NUMBER_WORDS:
        return _NUMBER_WORDS[text.lower()]
    raise ValueError("not a number token: %r" % text)


def is_year_token(text: str) -> bool:
    # 4-digit numbers read as years only in the plausible calendar range;
    # "1000 meter" stays a measure
    if not re.match(r"^\d{4}$", text):
        return False
    return 1500 <= int(text) <= 2100


def upper_snake(label: str) -> str:
    """Relation/type symbol from a surface form: ``in radius of`` -> IN_RADIUS_OF."""
    parts = re.split(r"[\s\-]+", label.strip())
    return "_".join(p.upper() for p in parts if p)
