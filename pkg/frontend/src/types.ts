// Annotation interchange document shapes (mirrors the published JSON Schema).

export interface Token {
    index: number;
    text: string;
    pos: string;
    lemma: string;
}

export interface EntitySpan {
    start: number;
    end: number;
    kind: "place" | "event";
}

export interface DependencyArc {
    head: number; // -1 for the root
    dep: number;
    label: string;
}

export type ConstituencyNode = [string, ...(number | ConstituencyNode)[]];

export interface AnnotationDocument {
    question: string;
    tokens: Token[];
    entities: EntitySpan[];
    constituency: ConstituencyNode;
    dependencies: DependencyArc[];
}

export interface Lexicons {
    gazetteer: Map<string, "place" | "event">;
    placeTypes: Set<string>;
    eventTypes: Set<string>;
    verbs: Set<string>;
    prepositions: Set<string>;
    qualities: Map<string, string>; // adjective -> degree
    comparisonPatterns: string[][]; // token patterns, "*" matches >=1 tokens
}
