import json

import pytest
from click.testing import CliRunner

from asdkb.cli import main
from asdkb.resources import data_path, fixture_dir


@pytest.fixture()
def runner():
    return CliRunner()


def test_ingest_reports_counts(runner):
    result = runner.invoke(main, ["ingest", "--data", str(fixture_dir())])
    assert result.exit_code == 0, result.output
    assert "disease: 49" in result.output
    assert "screening_tool: 20" in result.output
    assert "merged: hosp01 + hosp02" in result.output


def test_export_import_round_trip(runner, tmp_path):
    first = tmp_path / "dump1.nt"
    second = tmp_path / "dump2.nt"
    result = runner.invoke(
        main, ["export", "--data", str(fixture_dir()), "--out", str(first)]
    )
    assert result.exit_code == 0, result.output
    result = runner.invoke(main, ["import", str(first), "--out", str(second)])
    assert result.exit_code == 0, result.output
    assert first.read_bytes() == second.read_bytes()


def test_query_prints_tsv(runner):
    result = runner.invoke(
        main,
        [
            "query",
            "SELECT ?s WHERE { <http://w3id.org/asdkb/instance/disease1> "
            "<http://w3id.org/asdkb/ontology/property/hasSymptom> ?s } LIMIT 2",
            "--data",
            str(fixture_dir()),
        ],
    )
    assert result.exit_code == 0, result.output
    lines = result.output.strip().splitlines()
    assert lines[0] == "?s"
    assert len(lines) == 3


def test_query_against_dump(runner, tmp_path):
    dump = tmp_path / "dump.nt"
    runner.invoke(main, ["export", "--data", str(fixture_dir()), "--out", str(dump)])
    result = runner.invoke(
        main,
        [
            "query",
            "SELECT ?o WHERE { ?s <http://w3id.org/asdkb/ontology/property/Label> ?o } LIMIT 1",
            "--dump",
            str(dump),
        ],
    )
    assert result.exit_code == 0, result.output


def test_qa_command(runner):
    result = runner.invoke(
        main, ["qa", "哪些干预方法是有效的？", "--data", str(fixture_dir())]
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["answered"] is True
    assert payload["route"] == "pattern"


def test_eval_accuracy_known_interval(runner, tmp_path):
    labels = tmp_path / "labels.jsonl"
    lines = []
    counts = {"a1": 710, "a2": 711, "a3": 712, "a4": 713, "a5": 714}
    for annotator, correct in counts.items():
        for i in range(732):
            lines.append(
                json.dumps(
                    {
                        "annotator": annotator,
                        "entity": f"http://w3id.org/asdkb/instance/e{i}",
                        "triple": f"<http://w3id.org/asdkb/instance/e{i}> "
                        f"<http://w3id.org/asdkb/ontology/property/Label> \"v{i}\" .",
                        "choice": "correct" if i < correct else "incorrect",
                    }
                )
            )
    labels.write_text("\n".join(lines), encoding="utf-8")
    result = runner.invoke(main, ["eval", "accuracy", "--labels", str(labels)])
    assert result.exit_code == 0, result.output
    assert "97.02%" in result.output
    payload = json.loads(result.output.strip().splitlines()[-1])
    assert payload["trials"] == 732
    assert abs(payload["center"] - 0.9702) < 1e-3


def test_eval_coverage_on_fixture_questions(runner):
    result = runner.invoke(
        main,
        [
            "eval",
            "coverage",
            "--questions",
            str(data_path("eval_questions.jsonl")),
            "--data",
            str(fixture_dir()),
        ],
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output.strip().splitlines()[-1])
    assert payload["coverage"] >= 0.80
