# -*- coding: utf-8 -*-

"""
End-to-end tests of the command line: exit codes, summaries and artifacts.
"""

# **** IMPORTS ****
import json

import pytest

from main import main, register_commands
from treewalk import registry
from treewalk.fixtures import build_fixture, measure_from_weights, parse_word, read_weight_table
from treewalk.exceptions import ConfigError, ValidationError

# **** FUNCTIONS ****
def _summary(out_dir) -> dict:
    return json.loads((out_dir / "summary.json").read_text(encoding="utf-8"))


# **** TESTS ****
def test_commands_are_discovered():
    if not registry.process_registry:
        register_commands()
    assert registry.command_names() == ["activity", "ascend", "entropy", "resistance", "schreier", "verify"]


def test_activity_on_hanoi(tmp_path, capsys):
    assert main(["activity", "--fixture", "hanoi", "--out", str(tmp_path)]) == 0
    summary = _summary(tmp_path)
    assert summary["status"] == "ok"
    assert summary["results"]["degree"] == "0"
    assert sorted(summary["artifacts"]) == ["activity.csv", "moore.txt"]
    lines = (tmp_path / "activity.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# treewalk")
    assert "activity completed" in capsys.readouterr().out


def test_activity_on_twoloop_is_unbounded(tmp_path):
    assert main(["activity", "--fixture", "twoloop", "--out", str(tmp_path)]) == 0
    assert _summary(tmp_path)["results"]["degree"] == "inf"


def test_unknown_fixture_exits_with_input_status(tmp_path, capsys):
    assert main(["resistance", "--fixture", "nope", "--out", str(tmp_path)]) == 2
    error = json.loads((tmp_path / "error.json").read_text(encoding="utf-8"))
    assert error["error"] == "unknown-fixture"
    assert _summary(tmp_path)["status"] == "failed"
    assert "unknown-fixture" in capsys.readouterr().err


def test_activity_needs_an_automaton(tmp_path):
    assert main(["activity", "--fixture", "mother2", "--out", str(tmp_path)]) == 1
    error = json.loads((tmp_path / "error.json").read_text(encoding="utf-8"))
    assert error["error"] == "unsupported"


def test_empty_range_is_a_config_error(tmp_path):
    assert main(["schreier", "--fixture", "hanoi", "--levels", "3..2", "--out", str(tmp_path)]) == 2
    assert json.loads((tmp_path / "error.json").read_text(encoding="utf-8"))["error"] == "config-error"


def test_source_is_required():
    with pytest.raises(SystemExit):
        main(["schreier"])


def test_artifacts_are_deterministic(tmp_path):
    first, second = tmp_path / "first", tmp_path / "second"
    for out_dir in (first, second):
        assert main(["schreier", "--fixture", "hanoi", "--levels", "1..2", "--out", str(out_dir)]) == 0
    assert _summary(first) == _summary(second)
    for name in _summary(first)["artifacts"]:
        assert (first / name).read_bytes() == (second / name).read_bytes()
    assert "schreier_n2.txt" in _summary(first)["artifacts"]


@pytest.mark.slow
def test_verify_hanoi_is_reproducible(tmp_path):
    first, second = tmp_path / "first", tmp_path / "second"
    for out_dir in (first, second):
        assert main(["verify", "--fixture", "hanoi", "--seed", "7", "--out", str(out_dir)]) == 0
    summary = _summary(first)
    assert summary == _summary(second)
    for name in summary["artifacts"] + ["summary.json"]:
        assert (first / name).read_bytes() == (second / name).read_bytes()
    checks = summary["results"]["checks"]
    assert set(checks.values()) <= {"passed", "skipped"}
    assert checks["bound_slope"] == "passed"
    assert checks["section_laws"] == "passed"
    assert ",false," not in (first / "verify.csv").read_text(encoding="utf-8")


def test_resistance_with_weight_table(tmp_path):
    weights = tmp_path / "weights.txt"
    weights.write_text("# uniform\na 1/3\nb 1/3\nc 1/3\n", encoding="utf-8")
    out_dir = tmp_path / "out"
    code = main([
        "resistance", "--fixture", "hanoi", "--weights", str(weights), "--symmetric",
        "--levels", "1..3", "--out", str(out_dir),
    ])
    assert code == 0
    results = _summary(out_dir)["results"]
    assert results["increasing"] is True
    assert set(results["traverses"]) == {"1", "2", "3"}
    assert results["traverses"]["1"]["steps"] == 20_000
    assert results["traverses"]["1"]["edge_flow"] == "1/9"
    assert (out_dir / "resistance.csv").exists()


def test_weights_must_sum_to_one(tmp_path):
    weights = tmp_path / "weights.txt"
    weights.write_text("a 1/2\nb 1/3\n", encoding="utf-8")
    out_dir = tmp_path / "out"
    assert main(["entropy", "--fixture", "hanoi", "--weights", str(weights), "--out", str(out_dir)]) == 2


def test_missing_weight_file(tmp_path):
    assert main(["entropy", "--fixture", "hanoi", "--weights", str(tmp_path / "none.txt"), "--out", str(tmp_path)]) == 2
    assert (tmp_path / "error.json").exists()


def test_weight_table_parsing():
    hanoi = build_fixture("hanoi")
    table = read_weight_table("a b 1/4  # comment\nb⁻¹ c 1/4\nc 1/4\nc 1/4\n")
    assert table == {"a b": "1/4", "b⁻¹ c": "1/4", "c": "1/2"}
    mu = measure_from_weights(hanoi, table)
    assert len(mu) == 3
    assert not mu.is_symmetric()
    with pytest.raises(ConfigError):
        measure_from_weights(hanoi, table, symmetric=True)
    with pytest.raises(ConfigError):
        read_weight_table("a 0.5\n")
    with pytest.raises(ValidationError):
        parse_word(hanoi, "a z")


def test_ascend_and_entropy_on_hanoi(tmp_path):
    assert main(["ascend", "--fixture", "hanoi", "--levels", "2..3", "--out", str(tmp_path / "ascend")]) == 0
    ascend = _summary(tmp_path / "ascend")
    assert "trace_n2.txt" in ascend["artifacts"]
    assert main([
        "entropy", "--fixture", "hanoi", "--levels", "1..4", "--k", "1..6", "--out", str(tmp_path / "entropy"),
    ]) == 0
    entropy = _summary(tmp_path / "entropy")
    assert sorted(entropy["artifacts"]) == ["edges.csv", "entropy.csv"]
