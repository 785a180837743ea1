from __future__ import annotations

import json
import subprocess
import sys

import pytest

from gufo_check.cli import EXIT_FINDINGS, EXIT_OK, EXIT_USAGE, RunConfig, main, run
from gufo_check.report import Report, emit_json, emit_text
from gufo_check.rules import MSG_R1

from .conftest import PREFIXES, RULES, corpus_files


def run_main(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_corpus_exits_zero(capsys):
    code, out, _ = run_main(capsys, *corpus_files())
    assert code == EXIT_OK
    assert "0 error(s)" in out


def test_r1_fixture_exits_one_with_message(capsys):
    code, out, _ = run_main(capsys, RULES / "r1_invalid.ttl")
    assert code == EXIT_FINDINGS
    assert MSG_R1 in out
    assert "r1_invalid.ttl:" in out and "error R1 :Dog" in out


def test_nonexistent_path_exits_two(capsys, tmp_path):
    code, out, err = run_main(capsys, tmp_path / "missing.ttl")
    assert code == EXIT_USAGE and out == ""
    assert err.startswith("gufo-check: cannot read")


def test_syntax_error_exits_two(capsys, tmp_path):
    bad = tmp_path / "bad.ttl"
    bad.write_text(PREFIXES + ":a :b .\n")
    code, _, err = run_main(capsys, bad)
    assert code == EXIT_USAGE
    assert "bad.ttl" in err and ":8:7:" in err


def test_binary_file_exits_two(capsys, tmp_path):
    bad = tmp_path / "blob.ttl"
    bad.write_bytes(b"\xff\xfe\x00")
    assert run_main(capsys, bad)[0] == EXIT_USAGE


@pytest.mark.parametrize("flags", [
    ["--enable", "R42"],
    ["--disable", "L9"],
    ["--severity", "R1=fatal"],
    ["--severity", "R1"],
    ["--severity", "X1=info"],
])
def test_bad_configuration_exits_two(capsys, flags):
    code, _, err = run_main(capsys, *flags, RULES / "r1_valid.ttl")
    assert code == EXIT_USAGE and err.startswith("gufo-check:")


def test_argparse_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--format", "xml", str(RULES / "r1_valid.ttl")])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == EXIT_USAGE


def test_fail_on_levels(capsys):
    warning_only = RULES.parent / "corpus" / "13-amazonexample.ttl"
    assert run_main(capsys, warning_only)[0] == EXIT_OK
    assert run_main(capsys, "--fail-on", "warning", warning_only)[0] == EXIT_FINDINGS
    assert run_main(capsys, "--fail-on", "never", RULES / "r1_invalid.ttl")[0] == EXIT_OK


def test_fail_on_never_still_reports_usage_errors(capsys, tmp_path):
    assert run_main(capsys, "--fail-on", "never", tmp_path / "nope.ttl")[0] == EXIT_USAGE


def test_enable_disable_and_severity(capsys):
    path = RULES / "r1_invalid.ttl"
    assert run_main(capsys, "--disable", "R1", path)[0] == EXIT_OK
    assert run_main(capsys, "--enable", "R2,R3", path)[0] == EXIT_OK
    code, out, _ = run_main(capsys, "--severity", "R1=warning", path)
    assert code == EXIT_OK and "warning R1" in out


def test_json_output_round_trips(capsys):
    code, out, _ = run_main(capsys, "--format", "json", "--stats", RULES / "r7_invalid.ttl")
    assert code == EXIT_FINDINGS
    data = json.loads(out)
    assert list(data) == ["version", "files", "violations", "counts", "stats"]
    (v,) = data["violations"]
    assert list(v) == ["rule", "severity", "focus", "secondary", "message", "file", "line"]
    assert v["message"] == "Instances :Hiena and :Lion of the partitioning type :AnimalSpecies are not declared disjoint."
    report = Report.from_json(out)
    assert emit_json(report) == out
    assert report.to_dict() == data


def test_empty_report():
    report = Report("0.1.0")
    data = json.loads(emit_json(report))
    assert data["violations"] == [] and data["counts"] == {"error": 0, "warning": 0, "info": 0}
    assert report.worst() is None
    assert Report.from_json(emit_json(report)) == report


def test_violations_are_ordered_by_severity_first():
    report, _ = run(RunConfig(paths=[str(p) for p in corpus_files()]))
    ranks = [("error", "warning", "info").index(v.severity) for v in report.violations]
    assert ranks == sorted(ranks)
    assert report.worst() == "warning"


def test_json_is_byte_identical_across_runs(capsys):
    args = ["--format", "json", "--stats", *corpus_files()]
    first = run_main(capsys, *args)[1]
    second = run_main(capsys, *args)[1]
    assert first == second


def test_stats(capsys):
    code, out, _ = run_main(capsys, "--format", "json", "--stats", *corpus_files())
    stats = json.loads(out)["stats"]
    assert stats["classes"] == 32 and stats["individuals"] == 31
    assert stats["metatypes"] == {
        "Kind": 1, "SubKind": 2, "Phase": 1, "Role": 2, "Category": 0,
        "PhaseMixin": 0, "RoleMixin": 0, "Mixin": 0,
    }


def test_blank_nodes_from_different_files_stay_apart(tmp_path):
    a, b = tmp_path / "a.ttl", tmp_path / "b.ttl"
    a.write_text(PREFIXES + "_:x a gufo:Event .\n")
    b.write_text(PREFIXES + "_:x a gufo:Situation .\n")
    report, code = run(RunConfig(paths=[str(a), str(b)]))
    assert code == EXIT_OK
    assert [v for v in report.violations if v.rule_id == "R10"] == []


def test_direct_subclass_only_flag(capsys, tmp_path):
    path = tmp_path / "chain.ttl"
    path.write_text(PREFIXES + ":T a gufo:Phase ; rdfs:subClassOf :M . :M rdfs:subClassOf gufo:Event .\n")
    assert "R5" in run_main(capsys, "--disable", "R3", path)[1]
    assert "R5" not in run_main(capsys, "--disable", "R3", "--direct-subclass-only", path)[1]


def test_infer_domains_flag(capsys, tmp_path):
    path = tmp_path / "p.ttl"
    path.write_text(PREFIXES + ":Pele gufo:participatedIn :Final .\n")
    assert "info L5" in run_main(capsys, path)[1]
    assert "L5" not in run_main(capsys, "--infer-domains", path)[1]


def test_gufo_merge_warnings(capsys, tmp_path):
    official = tmp_path / "gufo.ttl"
    official.write_text(PREFIXES + "gufo:Event rdfs:subClassOf gufo:Endurant .\n gufo:Extra a owl:Class .\n")
    code, out, _ = run_main(capsys, "--format", "json", "--stats", "--gufo", official, RULES / "r1_valid.ttl")
    data = json.loads(out)
    assert code == EXIT_OK
    assert [v["rule"] for v in data["violations"]] == ["V1"]
    assert data["stats"]["gufo"] == {"classes": 1, "object_properties": 0, "data_properties": 0}


def test_base_resolves_relative_iris(tmp_path):
    path = tmp_path / "rel.ttl"
    path.write_text(PREFIXES + "<Dog> a gufo:Kind ; rdfs:subClassOf <Pet> . <Pet> a gufo:Role .\n")
    report, _ = run(RunConfig(paths=[str(path)], base="http://zoo.example/"))
    assert report.violations[0].focus.value == "http://zoo.example/Dog"


def test_human_summary_line():
    report, _ = run(RunConfig(paths=[str(RULES / "r1_invalid.ttl")]))
    last = emit_text(report).splitlines()[-1]
    assert last.startswith("1 file(s), ") and "1 error(s)" in last


def test_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "gufo_check.cli", str(RULES / "r1_invalid.ttl")],
        capture_output=True, text=True,
    )
    assert proc.returncode == EXIT_FINDINGS and MSG_R1 in proc.stdout


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "gufo-check 0.1.0" in capsys.readouterr().out
