#!/usr/bin/env python3
"""Bootstrap and freeze the corpus goldens.

Runs the pipeline on each question from corpus_questions.py and writes one
JSON file per entry (annotation document, encodings, logical text, query
text, executed answer, concept/mapping URIs). The output is reviewed and
committed; tests then hold the pipeline to these files, and the
paper-derived artifacts (intro logical form, intro query) are additionally
pinned by hand-typed strings in the acceptance suite.
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
from corpus_questions import QUESTIONS  # noqa: E402

from placeql import Compiler  # noqa: E402
from placeql.geoeval import execute, parse_query  # noqa: E402
from placeql import interchange  # noqa: E402
from placeql.corpus import _concepts_of, _mappings_of  # noqa: E402

OUT = Path(__file__).resolve().parent.parent / "src" / "placeql" / "data" / "corpus"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    compiler = Compiler()
    kb = compiler.load_kb()
    for qid, question, tags in QUESTIONS:
        result = compiler.compile(question)
        ast = parse_query(result.query_text)
        answer = execute(ast, kb).to_json()
        entry = {
            "id": qid,
            "question": question,
            "tags": tags,
            "annotation": interchange.to_json(result.doc),
            "encodings": [{"start": a.start, "end": a.end, "code": a.cls.value}
                          for a in result.encodings],
            "logical": result.logical_text,
            "query": result.query_text,
            "answer": answer,
            "concepts": _concepts_of(result),
            "mappings": _mappings_of(result),
        }
        path = OUT / ("%s.json" % qid)
        path.write_text(json.dumps(entry, ensure_ascii=False, indent=2) + "\n",
                        encoding="utf-8")
        print("wrote %s (%s)" % (path.name, ",".join(tags)))
    print("%d entries" % len(QUESTIONS))


if __name__ == "__main__":
    main()
