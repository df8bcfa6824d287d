import json
import subprocess
import sys

import pytest

from placeql import interchange
from placeql.corpus import evaluate, load_corpus, self_check
from placeql.errors import CorpusError


def test_corpus_loads_and_self_checks(compiler, corpus_entries, kb):
    assert len(corpus_entries) >= 40
    self_check(corpus_entries, kb)


def test_empty_corpus_raises(tmp_path):
    with pytest.raises(CorpusError):
        load_corpus(tmp_path)


def test_malformed_entry_raises(tmp_path):
    (tmp_path / "q99.json").write_text('{"id": "q99"}', encoding="utf-8")
    with pytest.raises(CorpusError):
        load_corpus(tmp_path)


def test_scoring_self_consistency(compiler, corpus_entries):
    # scoring golden artifacts against themselves yields exactly 100
    from placeql.scoring import ScoreReport, score_entry
    from placeql.logical import parse_logical
    report = ScoreReport(mode="self")
    for entry in corpus_entries:
        produced = {
            "encodings": entry.encodings,
            "statement": parse_logical(entry.logical),
            "logical_text": entry.logical,
            "query_text": entry.query,
            "answer": entry.answer,
            "concepts": entry.concepts,
            "mappings": entry.mappings,
        }
        score_entry(report, entry, produced, compiler.lexicons)
    data = report.to_json()
    for stage, rate in data["stage_exact"].items():
        assert rate == 100.0, stage
    for label, row in data["encoding_classes"].items():
        assert row["precision"] == 100.0 and row["recall"] == 100.0, label
    for label, row in data["logical"].items():
        assert row["precision"] == 100.0 and row["recall"] == 100.0, label


def test_ingested_mode_is_fully_exact(compiler, corpus_entries):
    report = evaluate(compiler, corpus_entries, mode="ingested")
    data = report.to_json()
    assert data["failures"] == []
    for stage, rate in data["stage_exact"].items():
        assert rate == 100.0, stage


def test_report_determinism(compiler, corpus_entries):
    a = evaluate(compiler, corpus_entries, mode="ingested", jobs=4).to_json()
    b = evaluate(compiler, corpus_entries, mode="ingested", jobs=1).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_pipeline_composition_matches_cli(compiler, corpus_entries, tmp_path):
    # the CLI is a thin shell over the module operations: same artifacts
    entry = corpus_entries[0]
    result = compiler.compile(entry.question)
    out = _cli("compile", entry.question, "--format", "json")
    data = json.loads(out.stdout)
    assert data["logical"] == result.logical_text
    assert data["query"] == result.query_text


def _cli(*args, expect_code=0):
    proc = subprocess.run([sys.executable, "-m", "placeql.cli", *args],
                          capture_output=True, text=True)
    assert proc.returncode == expect_code, proc.stderr
    return proc


INTRO = "How many pharmacies are in 200 meter radius of High Street in Oxford?"


def test_cli_compile_with_golden_annotations(compiler, corpus_entries, tmp_path):
    entry = next(e for e in corpus_entries if e.id == "q01")
    ann_file = tmp_path / "q01.json"
    ann_file.write_text(json.dumps(entry.annotation), encoding="utf-8")
    out = _cli("compile", "--annotations", str(ann_file), "--format", "json")
    data = json.loads(out.stdout)
    assert data["logical"] == entry.logical
    assert data["query"] == entry.query


def test_cli_logical_only_stops_early():
    out = _cli("compile", INTRO, "--logical-only")
    assert "COUNT(x0):" in out.stdout
    assert "SELECT" not in out.stdout


def test_cli_missing_kb_exits_2(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"kb_path": str(tmp_path / "absent.tsv")}),
                      encoding="utf-8")
    proc = subprocess.run([sys.executable, "-m", "placeql.cli",
                           "--config", str(config), "run", INTRO],
                          capture_output=True, text=True)
    assert proc.returncode == 2


def test_cli_compile_failure_exits_1():
    proc = subprocess.run([sys.executable, "-m", "placeql.cli", "compile",
                           "Why is anything anywhere?", "--logical-only"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "intent" in proc.stderr


def test_cli_run_executes(tmp_path):
    out = _cli("run", INTRO, "--format", "json")
    data = json.loads(out.stdout)
    bindings = data["results"]["results"]["bindings"]
    assert bindings == [{"countx0": {"type": "literal", "value": "3"}}]


def test_cli_kb_check():
    out = _cli("kb", "check", "--format", "json")
    info = json.loads(out.stdout)
    assert info["entities"] >= 200
    assert info["ontology_types"] > 20


def test_cli_eval_corpus_json():
    out = _cli("eval-corpus", "--format", "json")
    data = json.loads(out.stdout)
    assert data["stage_exact"]["query"] == 100.0


def test_cli_dump_analysis():
    out = _cli("compile", INTRO, "--dump-analysis")
    data = json.loads(out.stdout)
    assert data["intent"]["kind"] == "count"
    assert any(ph["kind"] == "location" for ph in data["phrases"])
    assert data["encodings"][0]["code"] == "6"


def test_cli_dump_query_ast():
    out = _cli("compile", INTRO, "--dump-query-ast")
    data = json.loads(out.stdout)
    assert data["head"]["clause"] == "CountHead"
    assert any(c["clause"] == "TypeBinding" for c in data["where"])


def test_cli_query_output_file(tmp_path):
    target = tmp_path / "query.rq"
    _cli("compile", INTRO, "--output", str(target))
    assert "SELECT DISTINCT" in target.read_text(encoding="utf-8")


def test_cli_threshold_flags():
    # raising the label threshold above the crafted similarities turns the
    # three-way mapping into a glossary-stage miss -> compile failure
    proc = subprocess.run([sys.executable, "-m", "placeql.cli",
                           "--label-threshold", "0.999",
                           "--glossary-threshold", "0.999",
                           "compile", INTRO],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "kb" in proc.stderr
