"""Command line behaviour, driven through click's runner."""

import pytest
from click.testing import CliRunner

from conftest import CORPUS, GOLDEN_BASE
from test_usecase import GOLDEN_TUPLES
from ucat.cli import main

RUS = str(CORPUS / "model_upload.rus")
USECASE = str(CORPUS / "model_upload.usecase")
TYPES = str(CORPUS / "model_upload.types")
PATTERNS = str(CORPUS / "patterns")


@pytest.fixture
def runner():
    return CliRunner()


def test_validate_ok(runner):
    result = runner.invoke(main, ["validate", "--rus", RUS, "--usecase", USECASE])
    assert result.exit_code == 0
    assert result.output == "OK\n"


def test_validate_reports_bad_lines(runner, tmp_path):
    bad = tmp_path / "bad.usecase"
    bad.write_text("user clicks newModel\nuser clicks the save link\n", encoding="utf-8")
    result = runner.invoke(main, ["validate", "--rus", RUS, "--usecase", str(bad)])
    assert result.exit_code == 1
    assert "line 2: NoRuleMatches: user clicks the save link" in result.output
    assert "rule at line 1" in result.output


def test_validate_reports_rule_errors(runner, tmp_path):
    bad = tmp_path / "bad.rus"
    bad.write_text("<I> <R> <I>\n", encoding="utf-8")
    result = runner.invoke(main, ["validate", "--rus", str(bad), "--usecase", USECASE])
    assert result.exit_code == 1
    assert "line 1" in result.output


def test_missing_file_is_usage_error(runner):
    result = runner.invoke(main, ["validate", "--rus", "no_such.rus", "--usecase", USECASE])
    assert result.exit_code == 2


def test_entities_golden(runner):
    result = runner.invoke(main, ["entities", "--rus", RUS, "--usecase", USECASE])
    assert result.exit_code == 0
    assert result.output == (
        "r:clicks,requests,inserts,validates,creates,list,\n"
        "i:user,newModel,system,name,description,scope,language,file,image,save,model,models,\n"
        "d:\n"
        "t:\n"
    )


def test_tuples_golden(runner):
    result = runner.invoke(main, ["tuples", "--rus", RUS, "--usecase", USECASE])
    assert result.exit_code == 0
    assert result.output.splitlines() == GOLDEN_TUPLES


def test_tuples_fail_on_unmatched_lines(runner, tmp_path):
    bad = tmp_path / "bad.usecase"
    bad.write_text("gibberish that matches nothing at all\n", encoding="utf-8")
    result = runner.invoke(main, ["tuples", "--rus", RUS, "--usecase", str(bad)])
    assert result.exit_code == 1


def test_ontology_writes_file_and_prints_prefix(runner, tmp_path):
    out = tmp_path / "model.omn"
    result = runner.invoke(main, [
        "ontology", "--rus", RUS, "--usecase", USECASE, "--types", TYPES,
        "--base", GOLDEN_BASE, "--out", str(out),
    ])
    assert result.exit_code == 0
    assert result.output == f"PREFIX ont: <{GOLDEN_BASE}#>\n"
    text = out.read_text(encoding="utf-8")
    assert text.startswith(f"Prefix: ont: <{GOLDEN_BASE}#>\n")
    assert f"Individual: <{GOLDEN_BASE}#user>" in text


def test_ontology_requires_types(runner, tmp_path):
    out = tmp_path / "model.omn"
    result = runner.invoke(main, [
        "ontology", "--rus", RUS, "--usecase", USECASE, "--out", str(out),
    ])
    assert result.exit_code == 1
    assert "untyped individuals" in result.output
    assert "user" in result.output
    assert not out.exists()


def test_ontology_permissive(runner, tmp_path):
    out = tmp_path / "model.omn"
    result = runner.invoke(main, [
        "ontology", "--rus", RUS, "--usecase", USECASE, "--out", str(out), "--permissive",
    ])
    assert result.exit_code == 0
    assert out.exists()
    assert "warning: untyped individuals" in result.output


def test_base_from_environment(runner, tmp_path):
    out = tmp_path / "model.omn"
    result = runner.invoke(
        main,
        ["ontology", "--rus", RUS, "--usecase", USECASE, "--types", TYPES, "--out", str(out)],
        env={"UCAT_BASE_IRI": "http://env.example/req"},
    )
    assert result.exit_code == 0
    assert result.output == "PREFIX ont: <http://env.example/req#>\n"


def test_query_ask(runner):
    result = runner.invoke(main, [
        "query", "--rus", RUS, "--usecase", USECASE, "--types", TYPES,
        "--base", GOLDEN_BASE, str(CORPUS / "patterns" / "model-upload.rq"),
    ])
    assert result.exit_code == 0
    assert result.output == "true\n"


def test_query_select_shortens_names(runner, tmp_path):
    q = tmp_path / "fields.rq"
    q.write_text(
        f"PREFIX ont: <{GOLDEN_BASE}#>\nSELECT ?field WHERE {{ ?s ont:requests ?field }}\n",
        encoding="utf-8",
    )
    result = runner.invoke(main, [
        "query", "--rus", RUS, "--usecase", USECASE, "--types", TYPES,
        "--base", GOLDEN_BASE, str(q),
    ])
    assert result.exit_code == 0
    assert result.output.splitlines() == [
        "?field", "description", "file", "image", "language", "name", "scope",
    ]


def test_query_syntax_error(runner, tmp_path):
    q = tmp_path / "broken.rq"
    q.write_text("ASK { ?a ont:clicks ?b }", encoding="utf-8")
    result = runner.invoke(main, [
        "query", "--rus", RUS, "--usecase", USECASE, "--types", TYPES, str(q),
    ])
    assert result.exit_code == 1
    assert "undeclared prefix" in result.output


def test_match_golden(runner):
    result = runner.invoke(main, [
        "match", "--rus", RUS, "--usecase", USECASE, "--types", TYPES,
        "--base", GOLDEN_BASE, "--catalog", PATTERNS,
    ])
    assert result.exit_code == 0
    assert result.output == "model-upload: MATCH\n"


def test_match_reports_misses(runner, tmp_path):
    (tmp_path / "exit.rq").write_text(
        "# pattern: exit-path\n"
        f"PREFIX ont: <{GOLDEN_BASE}#>\n"
        "ASK { ?u ont:exit ?l }\n",
        encoding="utf-8",
    )
    result = runner.invoke(main, [
        "match", "--rus", RUS, "--usecase", USECASE, "--types", TYPES,
        "--base", GOLDEN_BASE, "--catalog", str(tmp_path),
    ])
    assert result.exit_code == 0
    assert result.output == "exit-path: no match\n"
