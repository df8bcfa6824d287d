"""Built-in deterministic annotator: tokens, POS, entities, trees.

This replaces external parsers for the bundled corpus. Multiword proper
nouns are merged greedily (longest match first) against the gazetteer;
part-of-speech comes from lexicon and suffix rules; the constituency tree
uses a small documented tag set (SBARQ/SQ/WHNP/WHADVP/NP/VP/PP/ADJP/QP plus
POS leaves) assembled right-to-left so prepositional phrases nest the way
the phrase rules expect; dependencies are emitted with antecedent-resolved
subjects (the head of a relative clause verb is the noun it modifies).
"""

from __future__ import annotations

import re

from . import morph
from .errors import EmptyQuestion
from .interchange import AnnotationDocument, DependencyArc, EntitySpan, Token
from .lexicon import Lexicons

_WORD_RE = re.compile(r"[A-Za-z0-9][A-Za-z0-9'\-]*|\?|\.|,")

_WH_TAGS = {"how": "WRB", "where": "WRB", "when": "WRB", "why": "WRB",
            "what": "WP", "who": "WP", "which": "WDT"}
_BE_TAGS = {"is": "VBZ", "are": "VBP", "was": "VBD", "were": "VBD"}
_AUX_TAGS = {"does": "VBZ", "do": "VBP", "did": "VBD",
             "has": "VBZ", "have": "VBP", "had": "VBD"}
_DETERMINERS = {"the", "a", "an", "any", "some", "all", "no", "both",
                "every", "each", "this", "these", "those"}
_VERB_TAGS = {"VB", "VBZ", "VBP", "VBD", "VBN", "VBG"}
_MAX_NAME_TOKENS = 5


def tokenize_and_tag(question: str, lexicons: Lexicons) -> list:
    """Tokens with POS tags; multiword proper nouns merged per gazetteer."""
    words = _WORD_RE.findall(question)
    if not [w for w in words if w not in ("?", ".", ",")]:
        raise EmptyQuestion("question contains no tokens")
    merged = _merge_names(words, lexicons)
    tokens = []
    for i, (text, is_name) in enumerate(merged):
        pos = "NNP" if is_name else _tag(text, merged, i, lexicons)
        tokens.append(Token(i, text, pos, _lemma(text, pos)))
    return tokens


def _merge_names(words, lexicons):
    """Greedy longest-match merge against the gazetteer (case-insensitive)."""
    by_tokens = {}
    for name in lexicons.gazetteer:
        by_tokens[tuple(name.lower().split())] = name
    out = []
    i = 0
    lowered = [w.lower() for w in words]
    while i < len(words):
        match_len = 0
        for n in range(min(_MAX_NAME_TOKENS, len(words) - i), 0, -1):
            if tuple(lowered[i:i + n]) in by_tokens:
                match_len = n
                break
        if match_len:
            out.append((" ".join(words[i:i + match_len]), True))
            i += match_len
        else:
            out.append((words[i], False))
            i += 1
    return out


def _next_word(merged, i):
    return merged[i + 1][0].lower() if i + 1 < len(merged) else ""


def _tag(text, merged, i, lexicons: Lexicons) -> str:
    word = text.lower()
    if text in ("?", ".", ","):
        return text if text != "?" else "."
    if word in _BE_TAGS:
        return _BE_TAGS[word]
    if word in _AUX_TAGS:
        return _AUX_TAGS[word]
    if word in _WH_TAGS:
        return _WH_TAGS[word]
    if word == "that":
        nxt = _next_word(merged, i)
        return "WDT" if _is_verb_word(nxt, lexicons) or nxt in _BE_TAGS \
            else "DT"
    if word == "there":
        return "EX"
    if word in _DETERMINERS:
        return "DT"
    if word in ("and", "or"):
        return "CC"
    if word == "not":
        return "RB"
    if morph.is_number_token(text):
        return "CD"
    if word in ("many",):
        return "JJ"
    if word in ("far",):
        return "RB"
    if word in lexicons.qualities:
        degree = lexicons.qualities[word].degree
        return {"superlative": "JJS", "comparative": "JJR"}.get(degree, "JJ")
    if word in ("least", "most"):
        return "JJS"
    if _is_comparative(word, lexicons):
        return "JJR"
    if _is_preposition(word, lexicons):
        return "IN"
    if _is_type_noun(word, lexicons):
        return "NNS" if morph.is_plural(word) else "NN"
    if _is_verb_word(word, lexicons):
        return "VBZ" if word.endswith("s") else "VBP"
    if text[0].isupper() and i > 0:
        return "NNP"
    if word.endswith("est"):
        return "JJS"
    if word.endswith("ed") and len(word) > 4:
        return "VBN"  # unknown participles ("founded", "situated")
    return "NNS" if morph.is_plural(word) else "NN"


def _is_comparative(word, lexicons) -> bool:
    if word in ("more", "less", "fewer"):
        return True
    for pat in lexicons.comparisons:
        if len(pat.tokens) > 1 and pat.tokens[0] == word and word != "at":
            return True
    return False


def _is_preposition(word, lexicons) -> bool:
    if word in ("of", "than", "to", "at", "on", "by", "for", "with",
                "except", "from", "into"):
        return True
    for pat in lexicons.spatial_preps + lexicons.temporal_preps:
        # only pattern-initial words are prepositions themselves ("north of"
        # yes, the "radius" inside "in * radius of" no)
        if pat.tokens[0] == word:
            return True
    return False


def _is_type_noun(word, lexicons) -> bool:
    lemma = morph.singularize(word)
    return lexicons.is_place_type(lemma) or lexicons.is_event_type(lemma)


def _is_verb_word(word, lexicons) -> bool:
    lemma = morph.verb_lemma(word)
    return lemma in lexicons.active_verbs or lemma in lexicons.stative_verbs


def _lemma(text, pos) -> str:
    if pos == "NNP":
        return text
    word = text.lower()
    if pos in ("NN", "NNS"):
        return morph.singularize(word)
    if pos in _VERB_TAGS:
        return morph.verb_lemma(word)
    return word


# --------------------------------------------------------------------------
# full annotation: entities, constituency, dependencies
# --------------------------------------------------------------------------

def annotate(question: str, lexicons: Lexicons) -> AnnotationDocument:
    tokens = tokenize_and_tag(question, lexicons)
    entities = _entities(tokens, lexicons)
    comparison_spans = _comparison_spans(tokens, lexicons)
    constituency = _build_constituency(tokens, comparison_spans)
    dependencies = _build_dependencies(tokens, comparison_spans)
    return AnnotationDocument(question, tokens, entities, constituency,
                              dependencies)


def _entities(tokens, lexicons):
    spans = []
    i = 0
    while i < len(tokens):
        if tokens[i].pos != "NNP":
            i += 1
            continue
        j = i
        while j < len(tokens) and tokens[j].pos == "NNP":
            j += 1
        kind = lexicons.gazetteer.get(tokens[i].text, "place")
        spans.append(EntitySpan(i, j, kind))
        i = j
    return spans


def _comparison_spans(tokens, lexicons):
    from .annotation import _match_pattern
    spans = {}
    i = 0
    while i < len(tokens):
        for pat in lexicons.comparisons:
            m = _match_pattern(tokens, i, pat.tokens)
            if m is not None:
                end, _literals = m
                spans[i] = end
                i = end - 1
                break
        i += 1
    return spans


# -- constituency -----------------------------------------------------------

class _N:
    """Mutable build node; converted to the interchange nested-list form."""

    def __init__(self, label, children):
        self.label = label
        self.children = children  # _N or int leaves

    def to_nested(self):
        return [self.label] + [c.to_nested() if isinstance(c, _N) else c
                               for c in self.children]

    @property
    def start(self):
        c = self.children[0]
        return c.start if isinstance(c, _N) else c


def _build_constituency(tokens, comparison_spans):
    units = _chunk(tokens, comparison_spans)
    units = _assemble(units, tokens)
    root_label = "SBARQ" if units and isinstance(units[0], _N) and \
        units[0].label in ("WHNP", "WHADVP") else "SQ"
    root = _N(root_label, units)
    return root.to_nested()


def _chunk(tokens, comparison_spans):
    units = []
    i = 0
    n = len(tokens)
    while i < n:
        tok = tokens[i]
        if i in comparison_spans:
            end = comparison_spans[i]
            units.append(_N("QP", list(range(i, end))))
            i = end
            continue
        if tok.pos in ("WRB", "WP", "WDT") and i == 0:
            end = i + 1
            # how many / how far
            if tokens[i].text.lower() == "how" and end < n and \
                    tokens[end].pos in ("JJ", "RB"):
                end += 1
            label = "WHADVP" if tok.pos == "WRB" and (
                end - i == 1 or tokens[end - 1].pos == "RB") else "WHNP"
            units.append(_N(label, list(range(i, end))))
            i = end
            continue
        if tok.pos in ("DT", "CD", "JJ", "JJR", "JJS", "NN", "NNS", "NNP"):
            i = _np_chunk(tokens, i, units, comparison_spans)
            continue
        units.append(i)
        i += 1
    return units


def _np_chunk(tokens, i, units, comparison_spans):
    """One (possibly coordinated) noun chunk starting at i; returns new index."""
    n = len(tokens)
    children = []
    j = i
    while j < n:
        if j in comparison_spans:
            # "a population greater than ...": the comparison starts a new
            # ADJP; the noun chunk ends here
            break
        tok = tokens[j]
        if tok.pos == "CD":
            # number + following noun run forms a measure sub-NP; a further
            # noun becomes the modified head ("[200 meter] radius")
            nouns = []
            k = j + 1
            while k < n and tokens[k].pos in ("NN", "NNS"):
                nouns.append(k)
                k += 1
            if nouns:
                measure = _N("NP", [j, nouns[0]])
                if len(nouns) > 1:
                    children.append(_N("NP", [measure] + nouns[1:]))
                else:
                    children.append(measure)
                j = k
                continue
            children.append(j)
            j += 1
            continue
        if tok.pos in ("DT", "JJ", "JJR", "JJS", "NN", "NNS", "NNP"):
            children.append(j)
            j += 1
            continue
        if tok.pos == "CC" and j + 1 < n and \
                tokens[j + 1].pos in ("NN", "NNS", "NNP", "DT"):
            children.append(j)
            j += 1
            continue
        break
    units.append(_N("NP", children))
    return j


def _assemble(units, tokens):
    """Right-to-left: IN+NP -> PP, NP+PP -> nested NP, V+NP/PP -> VP,
    QP+NP -> ADJP-style comparison group, WDT+VP -> SBAR on preceding NP."""
    stack = []
    for unit in reversed(units):
        if isinstance(unit, _N) and unit.label == "NP":
            while stack and isinstance(stack[0], _N) and \
                    stack[0].label in ("PP", "SBAR", "ADJP"):
                unit = _N("NP", [unit, stack.pop(0)])
            stack.insert(0, unit)
            continue
        if isinstance(unit, _N) and unit.label == "QP":
            if stack and isinstance(stack[0], _N) and stack[0].label == "NP":
                stack.insert(0, _N("ADJP", [unit, stack.pop(0)]))
            else:
                stack.insert(0, _N("ADJP", [unit]))
            continue
        if isinstance(unit, int) and tokens[unit].pos == "IN":
            if stack and isinstance(stack[0], _N) and \
                    stack[0].label in ("NP", "PP"):
                stack.insert(0, _N("PP", [unit, stack.pop(0)]))
            else:
                stack.insert(0, unit)
            continue
        if isinstance(unit, int) and tokens[unit].pos in _VERB_TAGS:
            complements = []
            while stack and isinstance(stack[0], _N) and \
                    stack[0].label in ("NP", "PP", "ADJP") and \
                    len(complements) < 2:
                complements.append(stack.pop(0))
            if complements:
                stack.insert(0, _N("VP", [unit] + complements))
            else:
                stack.insert(0, unit)
            continue
        if isinstance(unit, int) and tokens[unit].pos == "WDT" and \
                stack and isinstance(stack[0], _N) and stack[0].label == "VP":
            stack.insert(0, _N("SBAR", [_N("WHNP", [unit]), stack.pop(0)]))
            continue
        stack.insert(0, unit)
    return stack


# -- dependencies -------------------------------------------------------------

def _build_dependencies(tokens, comparison_spans):
    n = len(tokens)
    heads = [None] * n
    labels = [None] * n

    root = _find_root(tokens)
    heads[root] = -1
    labels[root] = "root"

    in_comparison = set()
    for s, e in comparison_spans.items():
        in_comparison.update(range(s, e))

    verbs = [i for i, t in enumerate(tokens)
             if t.pos in _VERB_TAGS and not _is_aux(tokens, i)]
    nouniness = {"NN", "NNS", "NNP"}

    def preceding_noun(i):
        for j in range(i - 1, -1, -1):
            if tokens[j].pos in nouniness:
                return j
            if tokens[j].pos in _VERB_TAGS:
                return None
        return None

    # prepositions and their objects
    for i, tok in enumerate(tokens):
        if heads[i] is not None:
            continue
        if tok.pos == "IN" and i not in in_comparison:
            noun = preceding_noun(i)
            if noun is not None:
                heads[i], labels[i] = noun, "prep"
            else:
                verb = _nearest_verb_before(tokens, i) or root
                heads[i], labels[i] = verb, "prep"

    aux_positions = [i for i, t in enumerate(tokens) if _is_aux(tokens, i)]

    # nouns: pobj of nearest preceding preposition in the same stretch,
    # otherwise subject/object of the governing verb; with do-support the
    # noun before the auxiliary is the fronted object ("how many counties
    # does Wales have")
    for i, tok in enumerate(tokens):
        if heads[i] is not None or tok.pos not in nouniness:
            continue
        prep = _governing_prep(tokens, i, in_comparison)
        if prep is not None:
            heads[i], labels[i] = prep, "pobj"
            continue
        verb = _governing_verb(tokens, verbs, i)
        if verb is None:
            heads[i], labels[i] = root, "dep"
        elif i < verb:
            fronted = any(i < a < verb for a in aux_positions)
            heads[i], labels[i] = verb, "dobj" if fronted else "nsubj"
        else:
            heads[i], labels[i] = verb, "dobj"

    # subject-aux inversion ("Is Oxford ...", "Where is Wolverhampton?"):
    # if the root verb ended up with no subject, its first object is one
    if not any(heads[i] == root and labels[i] == "nsubj"
               for i in range(n)):
        for i in range(n):
            if heads[i] == root and labels[i] == "dobj":
                labels[i] = "nsubj"
                break

    # coordination: second conjunct attaches to the first
    for i, tok in enumerate(tokens):
        if tok.pos == "CC":
            left = preceding_noun(i)
            right = _next_noun(tokens, i)
            if left is not None:
                heads[i], labels[i] = left, "cc"
                if right is not None:
                    heads[right], labels[right] = left, "conj"

    # relative clause verbs attach to their antecedent noun; their subject is
    # resolved to the antecedent directly
    for v in verbs:
        if v == root or heads[v] is not None:
            continue
        antecedent = preceding_noun(v)
        if antecedent is not None and v > 0 and tokens[v - 1].pos == "WDT":
            heads[v], labels[v] = antecedent, "relcl"
            heads[v - 1], labels[v - 1] = v, "ref"
            if labels[antecedent] is None:
                mainverb = _governing_verb(tokens, [root], antecedent)
                heads[antecedent] = mainverb if mainverb is not None else root
                labels[antecedent] = "nsubj"
        else:
            heads[v], labels[v] = root, "conj"

    # comparison tokens lean on their target noun (so the collapsed phrase
    # node attaches through the measure's external arc), falling back to the
    # source noun when the target is a bare number
    for i, tok in enumerate(tokens):
        if heads[i] is not None or i not in in_comparison:
            continue
        nxt = _next_noun(tokens, i)
        if nxt is None:
            nxt = preceding_noun(i)
        heads[i] = nxt if nxt is not None else root
        labels[i] = "amod"

    # everything else hangs off its neighbors
    for i, tok in enumerate(tokens):
        if heads[i] is not None:
            continue
        if tok.pos in ("DT", "JJ", "JJR", "JJS", "CD", "RB"):
            nxt = _next_noun(tokens, i)
            heads[i] = nxt if nxt is not None else root
            labels[i] = {"DT": "det", "CD": "nummod"}.get(tok.pos, "amod")
        elif tok.pos in ("WRB", "WP", "WDT", "EX"):
            heads[i], labels[i] = root, "dep" if tok.pos != "EX" else "expl"
        elif _is_aux(tokens, i):
            heads[i], labels[i] = root, "aux"
        else:
            heads[i], labels[i] = root, "punct" if tok.pos == "." else "dep"

    return [DependencyArc(heads[i], i, labels[i]) for i in range(n)]


def _is_aux(tokens, i):
    word = tokens[i].text.lower()
    if word in ("does", "do", "did"):
        return any(t.pos in _VERB_TAGS and j > i for j, t in enumerate(tokens))
    return False


def _find_root(tokens):
    candidates = [i for i, t in enumerate(tokens) if t.pos in _VERB_TAGS
                  and not _is_aux(tokens, i)]
    main = [i for i in candidates
            if not (i > 0 and tokens[i - 1].pos == "WDT")]
    if main:
        return main[0]
    if candidates:
        return candidates[0]
    return 0


def _nearest_verb_before(tokens, i):
    for j in range(i - 1, -1, -1):
        if tokens[j].pos in _VERB_TAGS:
            return j
    return None


def _governing_prep(tokens, i, in_comparison):
    for j in range(i - 1, -1, -1):
        tok = tokens[j]
        if tok.pos == "IN" and j not in in_comparison:
            return j
        if tok.pos in ("NN", "NNS", "NNP") or tok.pos in _VERB_TAGS:
            return None
        if tok.pos in ("DT", "JJ", "JJR", "JJS", "CD", "RB", "CC"):
            continue
        return None
    return None


def _governing_verb(tokens, verbs, i):
    if not verbs:
        return None
    before = [v for v in verbs if v < i]
    after = [v for v in verbs if v > i]
    if before:
        return before[-1]
    if after:
        return after[0]
    return None


def _next_noun(tokens, i):
    for j in range(i + 1, len(tokens)):
        if tokens[j].pos in ("NN", "NNS", "NNP"):
            return j
    return None
