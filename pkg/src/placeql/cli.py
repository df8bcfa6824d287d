"""Command-line interface.

Subcommands: ``compile`` (question or annotation file to logical form and
query), ``run`` (compile and execute against the KB), ``eval-corpus``
(stage-by-stage scoring of the bundled corpus), ``kb check`` (load and
validate a KB file). Exit codes: 0 success, 1 compilation failure,
2 configuration/IO failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus as corpusmod
from . import interchange, kb as kbmod
from .config import Config
from .errors import MissingKb, PlaceQLError
from .geoeval import execute, parse_query
from .logical import to_json as logical_json
from .pipeline import Compiler


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="placeql",
        description="compile place-related questions into GeoSPARQL")
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--label-threshold", type=float,
                        help="ontology label-matching threshold")
    parser.add_argument("--glossary-threshold", type=float,
                        help="ontology glossary-matching threshold")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_question=True):
        if needs_question:
            p.add_argument("question", nargs="?",
                           help="question text (omit when using --annotations)")
            p.add_argument("--annotations",
                           help="annotation interchange JSON file ('-' for stdin)")
        p.add_argument("--kb", help="knowledge base file")
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("compile", help="question -> logical form + query")
    common(p)
    p.add_argument("--logical-only", action="store_true",
                   help="stop after the logical statement")
    p.add_argument("--ascii", action="store_true",
                   help="AND/OR/NOT instead of logic symbols")
    p.add_argument("--dump-analysis", action="store_true",
                   help="emit trees, phrases, relations and intent as JSON")
    p.add_argument("--dump-query-ast", action="store_true",
                   help="emit the structured query AST as JSON")
    p.add_argument("--output", "-o",
                   help="write the query text to a file instead of stdout")

    p = sub.add_parser("run", help="compile and execute against the KB")
    common(p)

    p = sub.add_parser("eval-corpus", help="score the corpus stage by stage")
    p.add_argument("--corpus", help="corpus directory")
    p.add_argument("--kb", help="knowledge base file")
    p.add_argument("--mode", choices=["ingested", "tagger"],
                   default="ingested",
                   help="use golden annotations or the built-in tagger")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--jobs", type=int, default=4)

    p = sub.add_parser("kb", help="knowledge base utilities")
    kb_sub = p.add_subparsers(dest="kb_command", required=True)
    pc = kb_sub.add_parser("check", help="load and validate a KB file")
    pc.add_argument("--kb", help="knowledge base file")
    pc.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def _load_document(args, compiler):
    if getattr(args, "annotations", None):
        if args.annotations == "-":
            text = sys.stdin.read()
        else:
            text = Path(args.annotations).read_text(encoding="utf-8")
        return interchange.loads(text)
    if not args.question:
        raise PlaceQLError("either a question or --annotations is required")
    return None


def _analysis_dump(result) -> dict:
    def node_json(node):
        out = {"label": node.label, "span": list(node.span)}
        if node.encoding is not None:
            out["encoding"] = node.encoding.value
        if node.phrase_label is not None:
            out["phrase"] = node.phrase_label
        if node.children:
            out["children"] = [node_json(c) for c in node.children]
        else:
            out["text"] = node.text
        return out

    tokens = result.doc.tokens
    phrases = []
    for ph in result.ctree.phrases:
        phrases.append({
            "kind": ph.kind, "span": list(ph.node.span),
            "text": ph.core_text(tokens),
            "relation": ph.relation_symbol, "operator": ph.operator,
            "measure": ph.measure.render() if ph.measure else None,
        })
    relations = {
        "locatum_location": [[loc.text, ph.core_text(tokens)]
                             for loc, ph in result.relations.locatum_location],
        "situation_property": [[v.text, getattr(o, "text", "<phrase>")]
                               for v, o in result.relations.situation_property],
        "place_activity": [[s.text, v.text]
                           for s, v in result.relations.place_activity],
        "comparison_source": [[s.text if s else None, ph.node.text]
                              for s, ph in result.relations.comparison_source],
    }
    return {
        "tokens": [{"index": t.index, "text": t.text, "pos": t.pos,
                    "lemma": t.lemma} for t in tokens],
        "encodings": [{"start": a.start, "end": a.end, "code": a.cls.value,
                       "source": a.source} for a in result.encodings],
        "constituency": node_json(result.ctree),
        "phrases": phrases,
        "relations": relations,
        "intent": None if result.intent is None else {
            "kind": result.intent.kind,
            "targets": [t.text for t in result.intent.targets],
            "operator": result.intent.operator,
        },
        "logical": logical_json(result.statement) if result.statement else None,
        "warnings": result.warnings,
    }


def _ast_json(ast) -> dict:
    import dataclasses

    def value(obj):
        if dataclasses.is_dataclass(obj):
            out = {"clause": type(obj).__name__}
            out.update({k: value(v) for k, v in dataclasses.asdict(obj).items()})
            return out
        if isinstance(obj, (list, tuple)):
            return [value(v) for v in obj]
        return obj

    return {"head": value(ast.head),
            "where": [value(c) for c in ast.where],
            "group_by": value(ast.group_by),
            "having": value(ast.having),
            "order_by": value(ast.order_by)}


def _cmd_compile(args, config) -> int:
    compiler = Compiler(config)
    doc = _load_document(args, compiler)
    needs_kb = not args.logical_only
    if needs_kb:
        compiler.load_kb(args.kb)
    result = compiler.compile(question=args.question, doc=doc,
                              logical_only=args.logical_only,
                              ascii_logic=args.ascii)
    if args.dump_analysis:
        print(json.dumps(_analysis_dump(result), ensure_ascii=False, indent=2))
        return 0
    if args.dump_query_ast:
        if result.query_ast is None:
            raise PlaceQLError("--dump-query-ast needs a full compile")
        print(json.dumps(_ast_json(result.query_ast), ensure_ascii=False,
                         indent=2))
        return 0
    if args.output and not args.logical_only:
        Path(args.output).write_text(result.query_text, encoding="utf-8")
    if args.format == "json":
        out = {"logical": result.logical_text}
        if not args.logical_only:
            out["query"] = result.query_text
        print(json.dumps(out, ensure_ascii=False, indent=2))
        return 0
    print(result.logical_text)
    if not args.logical_only and not args.output:
        print()
        print(result.query_text, end="")
    return 0


def _cmd_run(args, config) -> int:
    compiler = Compiler(config)
    doc = _load_document(args, compiler)
    kb = compiler.load_kb(args.kb)
    result = compiler.compile(question=args.question, doc=doc)
    ast = parse_query(result.query_text)
    res = execute(ast, kb)
    if args.format == "json":
        print(json.dumps({"logical": result.logical_text,
                          "query": result.query_text,
                          "results": res.to_json()},
                         ensure_ascii=False, indent=2))
    else:
        print(result.logical_text)
        print()
        print(result.query_text)
        print(res.to_table())
    return 0


def _cmd_eval(args, config) -> int:
    compiler = Compiler(config)
    compiler.load_kb(args.kb)
    entries = corpusmod.load_corpus(args.corpus or config.corpus_dir)
    report = corpusmod.evaluate(compiler, entries, mode=args.mode,
                                jobs=args.jobs)
    if args.format == "json":
        print(json.dumps(report.to_json(), ensure_ascii=False, indent=2,
                         sort_keys=True))
    else:
        print(report.to_text(), end="")
    return 0


def _cmd_kb_check(args, config) -> int:
    path = args.kb or config.kb_path
    if not Path(path).exists():
        raise MissingKb("knowledge base file %s does not exist" % path)
    kb = kbmod.load_kb(path)
    info = {
        "entities": kb.entity_count(),
        "triples": len(kb.triples),
        "geometries": len(kb.geometries),
        "ontology_types": sum(1 for e in kb.ontology.values()
                              if e.kind == "type"),
        "ontology_properties": sum(1 for e in kb.ontology.values()
                                   if e.kind == "property"),
        "indexed_names": len(kb.name_index),
    }
    if args.format == "json":
        print(json.dumps(info, indent=2, sort_keys=True))
    else:
        for key in sorted(info):
            print("%-20s %d" % (key, info[key]))
        print("ok")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = Config.load(args.config) if args.config else Config()
        if args.label_threshold is not None:
            config.label_threshold = args.label_threshold
        if args.glossary_threshold is not None:
            config.glossary_threshold = args.glossary_threshold
        if args.command == "compile":
            return _cmd_compile(args, config)
        if args.command == "run":
            return _cmd_run(args, config)
        if args.command == "eval-corpus":
            return _cmd_eval(args, config)
        if args.command == "kb":
            return _cmd_kb_check(args, config)
        parser.error("unknown command")
    except PlaceQLError as exc:
        print("error [%s]: %s" % (exc.stage, exc), file=sys.stderr)
        return exc.exit_code
    except FileNotFoundError as exc:
        print("error [io]: %s" % exc, file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
