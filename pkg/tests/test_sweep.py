"""Tests for the deterministic bulk sweep and its record replay machinery."""

import dataclasses
import json

import pytest

from qfivol import (
    RandomSpec,
    SweepConfig,
    builtin,
    evaluate_sample,
    format_record,
    regular_builtins,
    replay_record,
    resolve_ensemble,
    run_sweep,
)
from qfivol.sweep import _order_pairs


def _config(**overrides):
    base = dict(
        seed=123,
        dim=2,
        n=1,
        samples=30,
        functions=("sld",),
        ensemble="complex",
        parallelism=1,
    )
    base.update(overrides)
    return SweepConfig(**base)


def test_resolve_ensemble_aliases():
    assert resolve_ensemble("complex") == "density"
    assert resolve_ensemble("real") == "real-density"
    assert resolve_ensemble("structured") == "pauli-like-structured"
    assert resolve_ensemble("density") == "density"
    assert resolve_ensemble("density+complex-hermitian") == "density"
    assert resolve_ensemble(" Real ") == "real-density"
    with pytest.raises(ValueError, match="ensemble"):
        resolve_ensemble("bogus")


def test_config_validation():
    with pytest.raises(ValueError, match="n must be"):
        _config(n=4)
    with pytest.raises(ValueError, match="samples"):
        _config(samples=0)
    with pytest.raises(ValueError, match="parallelism"):
        _config(parallelism=0)
    with pytest.raises(ValueError, match="function"):
        _config(functions=())
    with pytest.raises(ValueError, match="regular"):
        _config(functions=("rld",))
    with pytest.raises(ValueError, match="structured"):
        _config(ensemble="structured", n=2)
    with pytest.raises(ValueError, match="dim"):
        _config(dim=1)


def test_config_canonicalizes_tags():
    config = _config(functions=("SLD", "Wy"), ensemble="real")
    assert config.functions == ("sld", "wy")
    assert config.ensemble == "real-density"


def test_format_record_round_trips_as_json():
    rspec = RandomSpec(123, 3, "density")
    records, _ = evaluate_sample(rspec, 7, 2, (builtin("wy"),))
    line = format_record(records[0])
    parsed = json.loads(line)
    assert parsed["index"] == 7
    assert parsed["function"] == "wy"
    assert isinstance(parsed["candidate"], bool)
    assert '"candidate": false' in line or '"candidate": true' in line
    assert '"candidate": 0' not in line
    assert line.index('"index"') < line.index('"gap"') < line.index('"candidate"')


def test_order_pairs_covers_the_chain():
    pairs = _order_pairs(regular_builtins())
    assert pairs == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def test_order_pairs_detects_equality_both_ways():
    f = builtin("sld")
    assert _order_pairs((f, f)) == ((0, 1), (1, 0))


def test_evaluate_sample_fields():
    rspec = RandomSpec(123, 3, "density")
    functions = (builtin("sld"), builtin("wy"))
    records, violations = evaluate_sample(rspec, 0, 2, functions)
    assert violations == 0
    assert [r["function"] for r in records] == ["sld", "wy"]
    for record in records:
        assert record["n"] == 2
        assert record["dim"] == 3
        assert record["ensemble"] == "density"
        assert record["robertson_det"] is not None
        assert record["cov_det"] >= record["qfi_det"] - 1e-10
        assert record["main_holds"] is True
    odd, _ = evaluate_sample(rspec, 0, 1, functions[:1])
    assert odd[0]["robertson_det"] is None


def test_evaluate_sample_counts_monotonicity_violations():
    """The ordered chain never breaks on real triples, and flipping a pair
    direction makes the same samples register as violations."""
    rspec = RandomSpec(123, 3, "real-density")
    functions = (builtin("sld"), builtin("wy"))
    for index in range(20):
        _, violations = evaluate_sample(rspec, index, 3, functions, ((0, 1),))
        assert violations == 0
        _, flipped = evaluate_sample(rspec, index, 3, functions, ((1, 0),))
        assert flipped in (0, 1)


def test_sweep_output_independent_of_parallelism(tmp_path):
    # 600 samples spans three chunks, so the parallel path reorders work
    config = _config(samples=600)
    serial = tmp_path / "serial.jsonl"
    parallel = tmp_path / "parallel.jsonl"
    summary_one = run_sweep(config, serial)
    summary_two = run_sweep(dataclasses.replace(config, parallelism=2), parallel)
    assert serial.read_bytes() == parallel.read_bytes()
    assert dataclasses.replace(summary_one, elapsed=0.0) == dataclasses.replace(
        summary_two, elapsed=0.0
    )


def test_sweep_repeated_run_is_byte_identical(tmp_path):
    config = _config(samples=50, n=2, functions=("sld", "wy"))
    first = tmp_path / "a.jsonl"
    second = tmp_path / "b.jsonl"
    run_sweep(config, first)
    run_sweep(config, second)
    assert first.read_bytes() == second.read_bytes()


def test_summary_matches_records(tmp_path):
    config = _config(samples=40, n=2)
    out = tmp_path / "sweep.jsonl"
    summary = run_sweep(config, out)
    lines = out.read_text().splitlines()
    records = [json.loads(line) for line in lines[:-1]]
    trailer = json.loads(lines[-1])
    assert trailer["summary"] is True
    assert summary.records == len(records) == 40
    assert summary.min_gap == min(r["gap"] for r in records)
    assert summary.candidate_counterexamples == sum(r["candidate"] for r in records)
    assert trailer["min_gap"] == summary.min_gap
    assert trailer["argmin_index"] == summary.argmin_index
    assert "elapsed" not in trailer
    assert set(trailer["per_function"]) == {"sld"}


def test_replay_round_trip(tmp_path):
    config = _config(samples=12, n=3, dim=3, functions=("sld", "wyd:0.25"))
    out = tmp_path / "sweep.jsonl"
    run_sweep(config, out)
    lines = out.read_text().splitlines()
    for line_number in (1, 7, len(lines) - 1):
        result = replay_record(str(out), line_number)
        assert result["mismatches"] == {}


def test_replay_detects_tampering(tmp_path):
    config = _config(samples=5)
    out = tmp_path / "sweep.jsonl"
    run_sweep(config, out)
    lines = out.read_text().splitlines()
    record = json.loads(lines[2])
    record["gap"] = record["gap"] + 1.0
    lines[2] = json.dumps(record)
    out.write_text("\n".join(lines) + "\n")
    result = replay_record(str(out), 3)
    assert "gap" in result["mismatches"]


def test_replay_rejects_summary_line(tmp_path):
    config = _config(samples=5)
    out = tmp_path / "sweep.jsonl"
    run_sweep(config, out)
    last = len(out.read_text().splitlines())
    with pytest.raises(ValueError, match="summary"):
        replay_record(str(out), last)


def test_replay_rejects_out_of_range_line(tmp_path):
    config = _config(samples=5)
    out = tmp_path / "sweep.jsonl"
    run_sweep(config, out)
    with pytest.raises(ValueError, match="line"):
        replay_record(str(out), 999)
