// Raw question text -> annotation interchange document.
//
// compromise supplies tokenization, part-of-speech tag sets and
// proper-noun/place detection; the published lexicon files steer tag
// corrections and gazetteer entity spans; the chunker derives the
// constituency and dependency layers. Tokens stay unmerged: multiword names
// are reported as multi-token entity spans and the compiler collapses them.

import nlp from "compromise";
import { buildConstituency, buildDependencies, comparisonSpans } from "./chunker.js";
import { lemmaOf, pennTag, TaggedWord } from "./penn.js";
import { AnnotationDocument, EntitySpan, Lexicons, Token } from "./types.js";

interface RawTerm {
    text: string;
    tags: string[];
    post: string;
}

function terms(question: string): TaggedWord[] {
    const doc = nlp(question);
    const out: TaggedWord[] = [];
    const sentences = doc.json({ terms: { tags: true, text: true } }) as
        { terms: RawTerm[] }[];
    for (const sentence of sentences) {
        for (const term of sentence.terms) {
            const clean = term.text.replace(/[?.,]+$/, "");
            if (clean) out.push({ text: clean, tags: new Set(term.tags) });
            const trailing = (term.post ?? "") +
                term.text.slice(clean.length);
            for (const ch of trailing) {
                if ("?.,".includes(ch)) {
                    out.push({ text: ch, tags: new Set() });
                }
            }
        }
    }
    return out;
}

function gazetteerSpans(words: TaggedWord[], lex: Lexicons): EntitySpan[] {
    const spans: EntitySpan[] = [];
    const lowered = words.map((w) => w.text.toLowerCase());
    const byLength = new Map<number, Set<string>>();
    for (const name of lex.gazetteer.keys()) {
        const parts = name.split(" ");
        if (!byLength.has(parts.length)) byLength.set(parts.length, new Set());
        byLength.get(parts.length)!.add(name);
    }
    const lengths = [...byLength.keys()].sort((a, b) => b - a);
    let i = 0;
    while (i < words.length) {
        let matched = 0;
        let kind: "place" | "event" = "place";
        for (const len of lengths) {
            const candidate = lowered.slice(i, i + len).join(" ");
            if (byLength.get(len)!.has(candidate)) {
                matched = len;
                kind = lex.gazetteer.get(candidate) ?? "place";
                break;
            }
        }
        if (matched) {
            spans.push({ start: i, end: i + matched, kind });
            i += matched;
        } else {
            i += 1;
        }
    }
    return spans;
}

export function annotate(question: string, lex: Lexicons): AnnotationDocument {
    const words = terms(question);
    if (!words.filter((w) => !"?.,".includes(w.text)).length) {
        throw new Error("question contains no tokens");
    }
    const nameSpans = gazetteerSpans(words, lex);
    const inName = new Set<number>();
    for (const span of nameSpans) {
        for (let k = span.start; k < span.end; k++) inName.add(k);
    }
    const tokens: Token[] = words.map((word, i) => {
        const pos = pennTag(word, words[i + 1], i, lex, inName.has(i));
        return { index: i, text: word.text, pos, lemma: lemmaOf(word.text, pos) };
    });

    const entities: EntitySpan[] = [...nameSpans];
    // proper-noun runs the gazetteer missed still become place entities
    let i = 0;
    while (i < tokens.length) {
        if (tokens[i].pos !== "NNP" || inName.has(i)) {
            i += 1;
            continue;
        }
        let j = i;
        while (j < tokens.length && tokens[j].pos === "NNP" && !inName.has(j)) {
            j += 1;
        }
        entities.push({ start: i, end: j, kind: "place" });
        i = j;
    }
    entities.sort((a, b) => a.start - b.start);

    const cmp = comparisonSpans(tokens, lex);
    return {
        question,
        tokens,
        entities,
        constituency: buildConstituency(tokens, cmp),
        dependencies: buildDependencies(tokens, cmp),
    };
}
