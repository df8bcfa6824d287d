#!/usr/bin/env node
// Line protocol: one question per stdin line, one schema-validated JSON
// document per stdout line. --pretty indents (for writing files);
// --lexicons overrides the lexicon directory. Schema violations are
// reported with their JSON-pointer path and exit nonzero.

import * as readline from "node:readline";
import { annotate } from "./annotate.js";
import { loadLexicons } from "./lexicons.js";
import { SchemaError, validateDocument } from "./schema.js";

function parseArgs(argv: string[]) {
    const opts = { pretty: false, lexicons: undefined as string | undefined };
    for (let i = 0; i < argv.length; i++) {
        const arg = argv[i];
        if (arg === "--pretty") opts.pretty = true;
        else if (arg === "--lexicons") opts.lexicons = argv[++i];
        else if (arg === "--help" || arg === "-h") {
            process.stdout.write(
                "usage: placeql-annotate [--pretty] [--lexicons DIR]\n" +
                "reads questions from stdin, one per line; writes one\n" +
                "annotation interchange JSON document per line\n");
            process.exit(0);
        } else {
            process.stderr.write(`unknown option: ${arg}\n`);
            process.exit(2);
        }
    }
    return opts;
}

async function main(): Promise<number> {
    const opts = parseArgs(process.argv.slice(2));
    const lexicons = loadLexicons(opts.lexicons);
    const rl = readline.createInterface({ input: process.stdin });
    let failures = 0;
    for await (const line of rl) {
        const question = line.trim();
        if (!question) continue;
        try {
            const doc = annotate(question, lexicons);
            validateDocument(doc);
            process.stdout.write(
                JSON.stringify(doc, null, opts.pretty ? 2 : undefined) + "\n");
        } catch (err) {
            failures += 1;
            if (err instanceof SchemaError) {
                process.stderr.write(
                    `schema violation at ${err.pointer}: ${err.message}\n`);
            } else {
                process.stderr.write(`annotation failed: ${String(err)}\n`);
            }
        }
    }
    return failures ? 1 : 0;
}

main().then((code) => process.exit(code));
