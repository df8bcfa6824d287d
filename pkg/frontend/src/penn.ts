// Penn-style tags from compromise's tag sets, with lexicon corrections for
// the vocabulary the compiler cares about (prepositions, verbs, qualities).

import { Lexicons } from "./types.js";

const WH: Record<string, string> = {
    how: "WRB", where: "WRB", when: "WRB", why: "WRB",
    what: "WP", who: "WP", which: "WDT",
};

const BE: Record<string, string> = {
    is: "VBZ", are: "VBP", was: "VBD", were: "VBD",
};

const AUX: Record<string, string> = {
    does: "VBZ", do: "VBP", did: "VBD", has: "VBZ", have: "VBP", had: "VBD",
};

const DETERMINERS = new Set([
    "the", "a", "an", "any", "some", "all", "no", "both", "every", "each",
    "this", "these", "those",
]);

const NUMBER_WORDS = new Set([
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
    "nine", "ten", "eleven", "twelve", "twenty", "thirty", "forty", "fifty",
    "hundred", "thousand", "million",
]);

export function isNumberToken(text: string): boolean {
    return /^\d+(\.\d+)?$/.test(text) || NUMBER_WORDS.has(text.toLowerCase());
}

export function verbLemma(word: string): string {
    const w = word.toLowerCase();
    const irregular: Record<string, string> = {
        is: "be", are: "be", was: "be", were: "be",
        has: "have", have: "have", had: "have",
        does: "do", do: "do", did: "do", crosses: "cross", lies: "lie",
    };
    if (irregular[w]) return irregular[w];
    if (/(ches|shes|sses|xes|zes)$/.test(w)) return w.slice(0, -2);
    if (w.endsWith("ies") && w.length > 4) return w.slice(0, -3) + "y";
    if (w.endsWith("ing") && w.length > 5) return w.slice(0, -3);
    if (w.endsWith("ed") && w.length > 4) return w.slice(0, -2);
    if (w.endsWith("s") && !w.endsWith("ss") && w.length > 3) return w.slice(0, -1);
    return w;
}

export function singularize(word: string): string {
    const w = word.toLowerCase();
    const irregular: Record<string, string> = {
        cities: "city", counties: "county", countries: "country",
        churches: "church", pharmacies: "pharmacy", radius: "radius",
    };
    if (irregular[w]) return irregular[w];
    if (/(ches|shes|sses|xes|zes)$/.test(w)) return w.slice(0, -2);
    if (w.endsWith("ies") && w.length > 4) return w.slice(0, -3) + "y";
    if (w.endsWith("s") && !w.endsWith("ss") && w.length > 3) return w.slice(0, -1);
    return w;
}

function isPlural(word: string): boolean {
    return singularize(word) !== word.toLowerCase();
}

export interface TaggedWord {
    text: string;
    tags: Set<string>; // compromise tags
}

export function pennTag(
    word: TaggedWord,
    next: TaggedWord | undefined,
    position: number,
    lex: Lexicons,
    isNameToken: boolean,
): string {
    const text = word.text;
    const w = text.toLowerCase();
    if (text === "?" || text === "." || text === ",") return ".";
    if (isNameToken) return "NNP";
    if (BE[w]) return BE[w];
    if (AUX[w]) return AUX[w];
    if (WH[w]) return WH[w];
    if (w === "that") {
        const nxt = next?.text.toLowerCase() ?? "";
        return lex.verbs.has(verbLemma(nxt)) || BE[nxt] ? "WDT" : "DT";
    }
    if (w === "there") return "EX";
    if (DETERMINERS.has(w)) return "DT";
    if (w === "and" || w === "or") return "CC";
    if (w === "not") return "RB";
    if (isNumberToken(text) || word.tags.has("Cardinal") ||
        word.tags.has("NumericValue")) return "CD";
    if (w === "many") return "JJ";
    if (w === "far") return "RB";
    if (lex.qualities.has(w)) {
        const degree = lex.qualities.get(w);
        return degree === "superlative" ? "JJS" :
            degree === "comparative" ? "JJR" : "JJ";
    }
    if (w === "least" || w === "most") return "JJS";
    if (comparativeStart(w, lex)) return "JJR";
    if (lex.prepositions.has(w) ||
        ["of", "than", "to", "at", "on", "by", "for", "with", "except",
         "from", "into"].includes(w)) return "IN";
    if (word.tags.has("Preposition")) return "IN";
    const lemma = singularize(w);
    if (lex.placeTypes.has(lemma) || lex.eventTypes.has(lemma)) {
        return isPlural(w) ? "NNS" : "NN";
    }
    if (lex.verbs.has(verbLemma(w))) return w.endsWith("s") ? "VBZ" : "VBP";
    if (word.tags.has("Verb") && !word.tags.has("Noun")) {
        if (word.tags.has("PastTense")) return "VBD";
        return w.endsWith("s") ? "VBZ" : "VBP";
    }
    if (/^[A-Z]/.test(text) && position > 0) return "NNP";
    if (word.tags.has("ProperNoun") || word.tags.has("Place")) return "NNP";
    if (word.tags.has("Adjective")) {
        if (word.tags.has("Superlative") || w.endsWith("est")) return "JJS";
        if (word.tags.has("Comparative")) return "JJR";
        return "JJ";
    }
    if (w.endsWith("est")) return "JJS";
    return isPlural(w) ? "NNS" : "NN";
}

function comparativeStart(word: string, lex: Lexicons): boolean {
    if (["more", "less", "fewer"].includes(word)) return true;
    return lex.comparisonPatterns.some(
        (pat) => pat.length > 1 && pat[0] === word && word !== "at");
}

export function lemmaOf(text: string, pos: string): string {
    if (pos === "NNP") return text;
    const w = text.toLowerCase();
    if (pos === "NN" || pos === "NNS") return singularize(w);
    if (pos.startsWith("VB")) return verbLemma(w);
    return w;
}
