// Deterministic question grammar over Penn-tagged tokens: NP/PP/VP/ADJP/QP
// chunks assembled right-to-left so prepositional phrases nest rightward,
// plus dependency arcs with antecedent-resolved relative-clause subjects.
// This follows the simplified tag-set conventions the compiler documents
// for its interchange format.

import { ConstituencyNode, DependencyArc, Lexicons, Token } from "./types.js";

const VERB_TAGS = new Set(["VB", "VBZ", "VBP", "VBD", "VBN", "VBG"]);
const NOUN_TAGS = new Set(["NN", "NNS", "NNP"]);

type Unit = number | Built;

interface Built {
    label: string;
    children: Unit[];
}

function start(unit: Unit): number {
    return typeof unit === "number" ? unit : start(unit.children[0]);
}

function toNested(unit: Unit): number | ConstituencyNode {
    if (typeof unit === "number") return unit;
    return [unit.label, ...unit.children.map(toNested)] as ConstituencyNode;
}

export function comparisonSpans(
    tokens: Token[],
    lex: Lexicons,
): Map<number, number> {
    const spans = new Map<number, number>();
    const lowered = tokens.map((t) => t.text.toLowerCase());
    let i = 0;
    while (i < tokens.length) {
        let matched = 0;
        for (const pat of lex.comparisonPatterns) {
            const end = matchPattern(lowered, i, pat);
            if (end !== null) {
                matched = end;
                break;
            }
        }
        if (matched) {
            spans.set(i, matched);
            i = matched;
        } else {
            i += 1;
        }
    }
    return spans;
}

function matchPattern(words: string[], at: number, pat: string[]): number | null {
    let pos = at;
    for (let k = 0; k < pat.length; k++) {
        if (pat[k] === "*") {
            const rest = pat.slice(k + 1);
            if (!rest.length) return null;
            for (let gap = pos + 1; gap < words.length; gap++) {
                const end = matchPattern(words, gap, rest);
                if (end !== null) return end;
            }
            return null;
        }
        if (words[pos] !== pat[k]) return null;
        pos += 1;
    }
    return pos;
}

export function buildConstituency(
    tokens: Token[],
    cmp: Map<number, number>,
): ConstituencyNode {
    const units = assemble(chunk(tokens, cmp), tokens);
    const first = units[0];
    const rootLabel =
        typeof first !== "number" && (first.label === "WHNP" ||
            first.label === "WHADVP") ? "SBARQ" : "SQ";
    return toNested({ label: rootLabel, children: units }) as ConstituencyNode;
}

function chunk(tokens: Token[], cmp: Map<number, number>): Unit[] {
    const units: Unit[] = [];
    let i = 0;
    const n = tokens.length;
    while (i < n) {
        if (cmp.has(i)) {
            const end = cmp.get(i)!;
            units.push({ label: "QP", children: range(i, end) });
            i = end;
            continue;
        }
        const tok = tokens[i];
        if (["WRB", "WP", "WDT"].includes(tok.pos) && i === 0) {
            let end = i + 1;
            if (tok.text.toLowerCase() === "how" && end < n &&
                ["JJ", "RB"].includes(tokens[end].pos)) end += 1;
            const label = tok.pos === "WRB" &&
                (end - i === 1 || tokens[end - 1].pos === "RB")
                ? "WHADVP" : "WHNP";
            units.push({ label, children: range(i, end) });
            i = end;
            continue;
        }
        if (["DT", "CD", "JJ", "JJR", "JJS", "NN", "NNS", "NNP"]
            .includes(tok.pos)) {
            i = npChunk(tokens, i, units, cmp);
            continue;
        }
        units.push(i);
        i += 1;
    }
    return units;
}

function npChunk(
    tokens: Token[],
    at: number,
    units: Unit[],
    cmp: Map<number, number>,
): number {
    const n = tokens.length;
    const children: Unit[] = [];
    let j = at;
    while (j < n) {
        if (cmp.has(j)) break;
        const tok = tokens[j];
        if (tok.pos === "CD") {
            const nouns: number[] = [];
            let k = j + 1;
            while (k < n && ["NN", "NNS"].includes(tokens[k].pos)) {
                nouns.push(k);
                k += 1;
            }
            if (nouns.length) {
                const measure: Built = { label: "NP", children: [j, nouns[0]] };
                children.push(nouns.length > 1
                    ? { label: "NP", children: [measure, ...nouns.slice(1)] }
                    : measure);
                j = k;
                continue;
            }
            children.push(j);
            j += 1;
            continue;
        }
        if (["DT", "JJ", "JJR", "JJS", "NN", "NNS", "NNP"].includes(tok.pos)) {
            children.push(j);
            j += 1;
            continue;
        }
        if (tok.pos === "CC" && j + 1 < n &&
            ["NN", "NNS", "NNP", "DT"].includes(tokens[j + 1].pos)) {
            children.push(j);
            j += 1;
            continue;
        }
        break;
    }
    units.push({ label: "NP", children });
    return j;
}

function assemble(units: Unit[], tokens: Token[]): Unit[] {
    const stack: Unit[] = [];
    for (const unit of [...units].reverse()) {
        if (typeof unit !== "number" && unit.label === "NP") {
            let current: Unit = unit;
            while (stack.length && typeof stack[0] !== "number" &&
                ["PP", "SBAR", "ADJP"].includes((stack[0] as Built).label)) {
                current = { label: "NP", children: [current, stack.shift()!] };
            }
            stack.unshift(current);
            continue;
        }
        if (typeof unit !== "number" && unit.label === "QP") {
            if (stack.length && typeof stack[0] !== "number" &&
                (stack[0] as Built).label === "NP") {
                stack.unshift({ label: "ADJP", children: [unit, stack.shift()!] });
            } else {
                stack.unshift({ label: "ADJP", children: [unit] });
            }
            continue;
        }
        if (typeof unit === "number" && tokens[unit].pos === "IN") {
            if (stack.length && typeof stack[0] !== "number" &&
                ["NP", "PP"].includes((stack[0] as Built).label)) {
                stack.unshift({ label: "PP", children: [unit, stack.shift()!] });
            } else {
                stack.unshift(unit);
            }
            continue;
        }
        if (typeof unit === "number" && VERB_TAGS.has(tokens[unit].pos)) {
            const complements: Unit[] = [];
            while (stack.length && typeof stack[0] !== "number" &&
                ["NP", "PP", "ADJP"].includes((stack[0] as Built).label) &&
                complements.length < 2) {
                complements.push(stack.shift()!);
            }
            stack.unshift(complements.length
                ? { label: "VP", children: [unit, ...complements] }
                : unit);
            continue;
        }
        if (typeof unit === "number" && tokens[unit].pos === "WDT" &&
            stack.length && typeof stack[0] !== "number" &&
            (stack[0] as Built).label === "VP") {
            stack.unshift({
                label: "SBAR",
                children: [{ label: "WHNP", children: [unit] }, stack.shift()!],
            });
            continue;
        }
        stack.unshift(unit);
    }
    return stack;
}

// --------------------------------------------------------------------------
// dependencies
// --------------------------------------------------------------------------

export function buildDependencies(
    tokens: Token[],
    cmp: Map<number, number>,
): DependencyArc[] {
    const n = tokens.length;
    const heads: (number | null)[] = new Array(n).fill(null);
    const labels: (string | null)[] = new Array(n).fill(null);

    const inComparison = new Set<number>();
    for (const [s, e] of cmp) for (let k = s; k < e; k++) inComparison.add(k);

    const isAux = (i: number) =>
        ["does", "do", "did"].includes(tokens[i].text.toLowerCase()) &&
        tokens.some((t, j) => j > i && VERB_TAGS.has(t.pos));
    const verbs = tokens.flatMap((t, i) =>
        VERB_TAGS.has(t.pos) && !isAux(i) ? [i] : []);
    const mains = verbs.filter((v) => !(v > 0 && tokens[v - 1].pos === "WDT"));
    const root = mains.length ? mains[0] : verbs.length ? verbs[0] : 0;
    heads[root] = -1;
    labels[root] = "root";

    const precedingNoun = (i: number): number | null => {
        for (let j = i - 1; j >= 0; j--) {
            if (NOUN_TAGS.has(tokens[j].pos)) return j;
            if (VERB_TAGS.has(tokens[j].pos)) return null;
        }
        return null;
    };
    const nextNoun = (i: number): number | null => {
        for (let j = i + 1; j < n; j++) {
            if (NOUN_TAGS.has(tokens[j].pos)) return j;
        }
        return null;
    };
    const nearestVerbBefore = (i: number): number | null => {
        for (let j = i - 1; j >= 0; j--) {
            if (VERB_TAGS.has(tokens[j].pos)) return j;
        }
        return null;
    };

    // prepositions
    for (let i = 0; i < n; i++) {
        if (heads[i] !== null || tokens[i].pos !== "IN" || inComparison.has(i)) {
            continue;
        }
        const noun = precedingNoun(i);
        if (noun !== null) {
            heads[i] = noun;
            labels[i] = "prep";
        } else {
            heads[i] = nearestVerbBefore(i) ?? root;
            labels[i] = "prep";
        }
    }

    const governingPrep = (i: number): number | null => {
        for (let j = i - 1; j >= 0; j--) {
            const pos = tokens[j].pos;
            if (pos === "IN" && !inComparison.has(j)) return j;
            if (NOUN_TAGS.has(pos) || VERB_TAGS.has(pos)) return null;
            if (["DT", "JJ", "JJR", "JJS", "CD", "RB", "CC"].includes(pos) ||
                inComparison.has(j)) continue;
            return null;
        }
        return null;
    };
    const governingVerb = (i: number): number | null => {
        const before = verbs.filter((v) => v < i);
        if (before.length) return before[before.length - 1];
        const after = verbs.filter((v) => v > i);
        return after.length ? after[0] : null;
    };
    const auxPositions = tokens.flatMap((_, i) => (isAux(i) ? [i] : []));

    // nouns
    for (let i = 0; i < n; i++) {
        if (heads[i] !== null || !NOUN_TAGS.has(tokens[i].pos)) continue;
        const prep = governingPrep(i);
        if (prep !== null) {
            heads[i] = prep;
            labels[i] = "pobj";
            continue;
        }
        const verb = governingVerb(i);
        if (verb === null) {
            heads[i] = root;
            labels[i] = "dep";
        } else if (i < verb) {
            const fronted = auxPositions.some((a) => i < a && a < verb);
            heads[i] = verb;
            labels[i] = fronted ? "dobj" : "nsubj";
        } else {
            heads[i] = verb;
            labels[i] = "dobj";
        }
    }

    // subject-aux inversion: promote the root's first object when no subject
    if (!heads.some((h, i) => h === root && labels[i] === "nsubj")) {
        for (let i = 0; i < n; i++) {
            if (heads[i] === root && labels[i] === "dobj") {
                labels[i] = "nsubj";
                break;
            }
        }
    }

    // coordination
    for (let i = 0; i < n; i++) {
        if (tokens[i].pos !== "CC") continue;
        const left = precedingNoun(i);
        const right = nextNoun(i);
        if (left !== null) {
            heads[i] = left;
            labels[i] = "cc";
            if (right !== null) {
                heads[right] = left;
                labels[right] = "conj";
            }
        }
    }

    // relative-clause verbs attach to their antecedent
    for (const v of verbs) {
        if (v === root || heads[v] !== null) continue;
        const antecedent = precedingNoun(v);
        if (antecedent !== null && v > 0 && tokens[v - 1].pos === "WDT") {
            heads[v] = antecedent;
            labels[v] = "relcl";
            heads[v - 1] = v;
            labels[v - 1] = "ref";
            if (labels[antecedent] === null) {
                heads[antecedent] = root;
                labels[antecedent] = "nsubj";
            }
        } else {
            heads[v] = root;
            labels[v] = "conj";
        }
    }

    // comparison tokens lean on their target (or source) noun
    for (let i = 0; i < n; i++) {
        if (heads[i] !== null || !inComparison.has(i)) continue;
        const target = nextNoun(i) ?? precedingNoun(i);
        heads[i] = target ?? root;
        labels[i] = "amod";
    }

    // everything else
    for (let i = 0; i < n; i++) {
        if (heads[i] !== null) continue;
        const pos = tokens[i].pos;
        if (["DT", "JJ", "JJR", "JJS", "CD", "RB"].includes(pos)) {
            const nxt = nextNoun(i);
            heads[i] = nxt ?? root;
            labels[i] = pos === "DT" ? "det" : pos === "CD" ? "nummod" : "amod";
        } else if (["WRB", "WP", "WDT"].includes(pos)) {
            heads[i] = root;
            labels[i] = "dep";
        } else if (pos === "EX") {
            heads[i] = root;
            labels[i] = "expl";
        } else if (isAux(i)) {
            heads[i] = root;
            labels[i] = "aux";
        } else {
            heads[i] = root;
            labels[i] = pos === "." ? "punct" : "dep";
        }
    }

    return tokens.map((_, i) => ({
        head: heads[i]!,
        dep: i,
        label: labels[i]!,
    }));
}

function range(a: number, b: number): number[] {
    return Array.from({ length: b - a }, (_, k) => a + k);
}
