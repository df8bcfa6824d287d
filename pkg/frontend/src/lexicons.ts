// Loads the published lexicon TSV files (term<TAB>class rows; preposition
// and comparison patterns may contain "*" wildcards). The bridge only needs
// them to steer POS corrections and entity spans; the defaults point at the
// compiler package's data directory.

import * as fs from "node:fs";
import * as path from "node:path";
import { Lexicons } from "./types.js";

function rows(file: string): string[][] {
    if (!fs.existsSync(file)) return [];
    return fs.readFileSync(file, "utf-8")
        .split("\n")
        .map((line) => line.trimEnd())
        .filter((line) => line && !line.startsWith("#"))
        .map((line) => line.split("\t"));
}

export function defaultLexiconDir(): string {
    const env = process.env.PLACEQL_LEXICONS;
    if (env) return env;
    // frontend/dist/../.. = repository root
    const here = path.dirname(new URL(import.meta.url).pathname);
    return path.resolve(here, "..", "..", "src", "placeql", "data", "lexicons");
}

export function loadLexicons(dir?: string): Lexicons {
    const root = dir ?? defaultLexiconDir();
    const gazetteer = new Map<string, "place" | "event">();
    for (const [name, kind] of rows(path.join(root, "names.tsv"))) {
        gazetteer.set(name.toLowerCase(), kind === "event" ? "event" : "place");
    }
    const termSet = (file: string) =>
        new Set(rows(path.join(root, file)).map((r) => r[0].toLowerCase()));
    const verbs = new Set([
        ...termSet("active_verbs.tsv"),
        ...termSet("stative_verbs.tsv"),
    ]);
    const prepositions = new Set<string>();
    const comparisonPatterns: string[][] = [];
    for (const [pattern] of rows(path.join(root, "spatial_preps.tsv"))) {
        const first = pattern.toLowerCase().split(" ")[0];
        if (first !== "*") prepositions.add(first);
    }
    for (const [pattern] of rows(path.join(root, "temporal_preps.tsv"))) {
        prepositions.add(pattern.toLowerCase().split(" ")[0]);
    }
    for (const [pattern] of rows(path.join(root, "comparisons.tsv"))) {
        comparisonPatterns.push(pattern.toLowerCase().split(" "));
    }
    comparisonPatterns.sort((a, b) => b.length - a.length);
    const qualities = new Map<string, string>();
    for (const [adj, degree] of rows(path.join(root, "qualities.tsv"))) {
        qualities.set(adj.toLowerCase(), degree);
    }
    return {
        gazetteer,
        placeTypes: termSet("place_types.tsv"),
        eventTypes: termSet("event_types.tsv"),
        verbs,
        prepositions,
        qualities,
        comparisonPatterns,
    };
}
