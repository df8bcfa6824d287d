// Validation against the published interchange JSON Schema plus the
// structural invariants a schema cannot express (contiguous token indices,
// span alignment, tree coverage, single dependency root).

import Ajv, { ValidateFunction } from "ajv";
import * as fs from "node:fs";
import * as path from "node:path";
import { AnnotationDocument, ConstituencyNode } from "./types.js";

export function defaultSchemaPath(): string {
    const env = process.env.PLACEQL_SCHEMA;
    if (env) return env;
    const here = path.dirname(new URL(import.meta.url).pathname);
    return path.resolve(here, "..", "..", "src", "placeql", "data",
        "interchange.schema.json");
}

let compiled: ValidateFunction | null = null;

function validator(): ValidateFunction {
    if (!compiled) {
        const schema = JSON.parse(fs.readFileSync(defaultSchemaPath(), "utf-8"));
        // draft-07 tuple "items" + "additionalItems" trips ajv strict mode
        const ajv = new (Ajv as unknown as typeof Ajv.default)({
            allErrors: true,
            strict: false,
        });
        compiled = ajv.compile(schema);
    }
    return compiled;
}

export class SchemaError extends Error {
    constructor(message: string, readonly pointer: string) {
        super(`${pointer}: ${message}`);
    }
}

function leaves(node: ConstituencyNode | number, out: number[]): void {
    if (typeof node === "number") {
        out.push(node);
        return;
    }
    for (const child of node.slice(1)) {
        leaves(child as ConstituencyNode | number, out);
    }
}

export function validateDocument(doc: AnnotationDocument): void {
    const check = validator();
    if (!check(doc)) {
        const err = (check.errors ?? [])[0];
        throw new SchemaError(err?.message ?? "schema violation",
            err?.instancePath ?? "/");
    }
    const n = doc.tokens.length;
    doc.tokens.forEach((tok, i) => {
        if (tok.index !== i) {
            throw new SchemaError("token indices must be contiguous",
                `/tokens/${i}/index`);
        }
    });
    doc.entities.forEach((ent, i) => {
        if (!(0 <= ent.start && ent.start < ent.end && ent.end <= n)) {
            throw new SchemaError("entity span out of range", `/entities/${i}`);
        }
    });
    const roots = doc.dependencies.filter((d) => d.head === -1);
    if (doc.dependencies.length && roots.length !== 1) {
        throw new SchemaError("expected exactly one root", "/dependencies");
    }
    doc.dependencies.forEach((d, i) => {
        if (d.dep < 0 || d.dep >= n || d.head < -1 || d.head >= n) {
            throw new SchemaError("dependency arc out of range",
                `/dependencies/${i}`);
        }
    });
    const seen: number[] = [];
    leaves(doc.constituency, seen);
    if (seen.length !== n || seen.some((v, i) => v !== i)) {
        throw new SchemaError("constituency leaves must cover all tokens",
            "/constituency");
    }
}
