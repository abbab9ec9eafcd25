"""Deterministic exploratory sweeps over random ensembles.

One record is emitted per (sample, function) to a line-delimited file with a
fixed field order and floats printed with 17 significant digits, so records
round-trip bit-exactly and a file is byte-identical across runs and worker
counts.  Work is split into fixed-size chunks (independent of parallelism)
and both the record stream and the running aggregates are combined in chunk
order, which keeps even the floating-point summary stable when the worker
count changes.  Wall time is reported on the returned summary object only,
never written to the file.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .matrices import det_small, to_eigenframe
from .monotone import builtin, mean_table, tilde, tilde_order
from .sampling import ENSEMBLES, RandomSpec, sample_observables, sample_state
from .volumes import (
    EQUALITY_RTOL,
    MAIN_INEQUALITY_SLACK,
    MONOTONICITY_SLACK,
    observables_dependent,
    robertson_bound,
)

# fixed regardless of parallelism so record and aggregation order are stable
CHUNK_SIZE = 256

RECORD_FIELDS = (
    "index",
    "seed",
    "ensemble",
    "dim",
    "n",
    "function",
    "cov_det",
    "qfi_det",
    "gap",
    "volume_cov",
    "volume_qfi",
    "robertson_det",
    "main_holds",
    "dependent",
    "equality_consistent",
    "candidate",
)

_ALIASES = {
    "complex": "density",
    "real": "real-density",
    "structured": "pauli-like-structured",
    "density+complex-hermitian": "density",
    "real-density+real-symmetric": "real-density",
    "pauli-like-structured+pauli-like-structured": "pauli-like-structured",
}


def resolve_ensemble(tag: str) -> str:
    """Map a CLI ensemble tag (alias or STATE+OBSERVABLE pair) to a base tag."""
    key = tag.strip().lower()
    if key in _ALIASES:
        return _ALIASES[key]
    if key in ENSEMBLES:
        return key
    raise ValueError(
        f"unknown ensemble {tag!r}; use one of {sorted(_ALIASES)} or {ENSEMBLES}"
    )


@dataclass(frozen=True)
class SweepConfig:
    """Validated sweep parameters; functions are kept as parse strings so the
    config stays picklable for worker processes."""

    n: int
    dim: int
    samples: int
    functions: tuple
    ensemble: str
    seed: int
    parallelism: int = 1
    strict: bool = False

    def __post_init__(self):
        if self.n not in (1, 2, 3):
            raise ValueError(f"n must be 1, 2, or 3, got {self.n}")
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if self.parallelism < 1:
            raise ValueError("parallelism must be positive")
        if not self.functions:
            raise ValueError("at least one function is required")
        canonical = resolve_ensemble(self.ensemble)
        object.__setattr__(self, "ensemble", canonical)
        object.__setattr__(
            self, "functions", tuple(builtin(fid).fid for fid in self.functions)
        )
        for fid in self.functions:
            if not builtin(fid).regular:
                raise ValueError(f"sweep functions must be regular, got {fid}")
        if canonical == "pauli-like-structured" and self.n != 3:
            raise ValueError("the structured ensemble requires n = 3")
        RandomSpec(self.seed, self.dim, canonical)


@dataclass(frozen=True)
class SweepSummary:
    samples: int
    records: int
    functions: tuple
    min_gap: float
    argmin_index: int
    argmin_function: str
    candidate_counterexamples: int
    monotonicity_violations: int
    per_function: dict
    elapsed: float


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, str):
        return f'"{value}"'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return "%.17g" % float(value)


def format_record(record: dict) -> str:
    """One record as a JSON object line with fixed key order."""
    parts = [f'"{key}": {_format_value(record[key])}' for key in RECORD_FIELDS]
    return "{" + ", ".join(parts) + "}"


def _order_pairs(functions):
    """Resolvable ordered pairs (i, j) meaning volume_i >= volume_j must hold."""
    pairs = []
    for i in range(len(functions)):
        for j in range(i + 1, len(functions)):
            order = tilde_order(functions[i], functions[j])
            if order.first_le_second:
                pairs.append((i, j))
            if order.second_le_first:
                pairs.append((j, i))
    return tuple(pairs)


def evaluate_sample(rspec: RandomSpec, index: int, n: int, functions, order_pairs=()):
    """All per-function records for one sample plus its monotonicity violations."""
    state = sample_state(rspec, index)
    observables = sample_observables(rspec, index, n)
    frames = [to_eigenframe(state, o) for o in observables]
    lam = state.eigenvalues
    weights = 0.5 * (lam[:, None] + lam[None, :])
    overlaps = {}
    cov = np.empty((n, n))
    for h in range(n):
        for j in range(h, n):
            ov = np.real(frames[h] * frames[j].T)
            overlaps[(h, j)] = ov
            cov[h, j] = cov[j, h] = float(np.sum(weights * ov))
    cov_det = det_small(cov)
    dependent = observables_dependent(state, observables)
    robertson = robertson_bound(state, observables) if n % 2 == 0 else None
    scale = max(1.0, abs(cov_det))
    records = []
    volumes = []
    for f in functions:
        table = mean_table(tilde(f), lam)
        qfi = np.empty((n, n))
        for (h, j), ov in overlaps.items():
            qfi[h, j] = qfi[j, h] = cov[h, j] - float(np.sum(table * ov))
        qfi_det = det_small(qfi)
        gap = cov_det - qfi_det
        main = bool(gap >= -MAIN_INEQUALITY_SLACK * scale)
        vol_qfi = math.sqrt(max(0.0, qfi_det))
        volumes.append(vol_qfi)
        records.append(
            {
                "index": index,
                "seed": rspec.seed,
                "ensemble": rspec.ensemble,
                "dim": rspec.dim,
                "n": n,
                "function": f.fid,
                "cov_det": cov_det,
                "qfi_det": qfi_det,
                "gap": gap,
                "volume_cov": math.sqrt(max(0.0, cov_det)),
                "volume_qfi": vol_qfi,
                "robertson_det": robertson,
                "main_holds": main,
                "dependent": dependent,
                "equality_consistent": bool(
                    (not dependent) or abs(gap) <= EQUALITY_RTOL * scale
                ),
                "candidate": not main,
            }
        )
    violations = sum(
        1 for i, j in order_pairs if volumes[i] < volumes[j] - MONOTONICITY_SLACK
    )
    return records, violations


def _empty_aggregate(fids):
    return {
        "min_gap": math.inf,
        "argmin_index": -1,
        "argmin_function": "",
        "candidates": 0,
        "mono_violations": 0,
        "records": 0,
        "per_function": {
            fid: {"min_gap": math.inf, "sum_gap": 0.0, "count": 0, "candidates": 0}
            for fid in fids
        },
    }


def _merge_aggregate(total, part):
    if part["min_gap"] < total["min_gap"]:
        total["min_gap"] = part["min_gap"]
        total["argmin_index"] = part["argmin_index"]
        total["argmin_function"] = part["argmin_function"]
    total["candidates"] += part["candidates"]
    total["mono_violations"] += part["mono_violations"]
    total["records"] += part["records"]
    for fid, stats in part["per_function"].items():
        dst = total["per_function"][fid]
        dst["min_gap"] = min(dst["min_gap"], stats["min_gap"])
        dst["sum_gap"] += stats["sum_gap"]
        dst["count"] += stats["count"]
        dst["candidates"] += stats["candidates"]
    return total


def _chunk_worker(args):
    config, start, stop = args
    functions = tuple(builtin(fid) for fid in config.functions)
    order_pairs = _order_pairs(functions)
    rspec = RandomSpec(config.seed, config.dim, config.ensemble)
    agg = _empty_aggregate(config.functions)
    lines = []
    for index in range(start, stop):
        records, violations = evaluate_sample(
            rspec, index, config.n, functions, order_pairs
        )
        agg["mono_violations"] += violations
        for rec in records:
            lines.append(format_record(rec))
            agg["records"] += 1
            stats = agg["per_function"][rec["function"]]
            stats["sum_gap"] += rec["gap"]
            stats["count"] += 1
            if rec["gap"] < stats["min_gap"]:
                stats["min_gap"] = rec["gap"]
            if rec["candidate"]:
                stats["candidates"] += 1
                agg["candidates"] += 1
            if rec["gap"] < agg["min_gap"]:
                agg["min_gap"] = rec["gap"]
                agg["argmin_index"] = rec["index"]
                agg["argmin_function"] = rec["function"]
    return lines, agg


def format_summary(config: SweepConfig, agg: dict) -> str:
    """The trailing summary line (fixed key order, no wall time)."""
    per_parts = []
    for fid in config.functions:
        stats = agg["per_function"][fid]
        mean_gap = stats["sum_gap"] / stats["count"] if stats["count"] else 0.0
        per_parts.append(
            f'"{fid}": {{"min_gap": {_format_value(stats["min_gap"])}, '
            f'"mean_gap": {_format_value(mean_gap)}, '
            f'"candidates": {stats["candidates"]}}}'
        )
    fids = ", ".join(f'"{fid}"' for fid in config.functions)
    return (
        "{"
        + ", ".join(
            [
                '"summary": true',
                f'"samples": {config.samples}',
                f'"records": {agg["records"]}',
                f'"n": {config.n}',
                f'"dim": {config.dim}',
                f'"ensemble": "{config.ensemble}"',
                f'"seed": {config.seed}',
                f'"functions": [{fids}]',
                f'"min_gap": {_format_value(agg["min_gap"])}',
                f'"argmin_index": {agg["argmin_index"]}',
                f'"argmin_function": "{agg["argmin_function"]}"',
                f'"candidate_counterexamples": {agg["candidates"]}',
                f'"monotonicity_violations": {agg["mono_violations"]}',
                f'"per_function": {{{", ".join(per_parts)}}}',
            ]
        )
        + "}"
    )


def run_sweep(config: SweepConfig, out_path) -> SweepSummary:
    """Run the sweep, write records plus a summary line, return the summary."""
    start_time = time.perf_counter()
    chunks = [
        (config, lo, min(lo + CHUNK_SIZE, config.samples))
        for lo in range(0, config.samples, CHUNK_SIZE)
    ]
    agg = _empty_aggregate(config.functions)
    with open(out_path, "w") as fh:
        if config.parallelism == 1:
            parts = map(_chunk_worker, chunks)
            for lines, part in parts:
                fh.write("\n".join(lines))
                fh.write("\n")
                _merge_aggregate(agg, part)
        else:
            with ProcessPoolExecutor(max_workers=config.parallelism) as pool:
                for lines, part in pool.map(_chunk_worker, chunks, chunksize=1):
                    fh.write("\n".join(lines))
                    fh.write("\n")
                    _merge_aggregate(agg, part)
        fh.write(format_summary(config, agg) + "\n")
    elapsed = time.perf_counter() - start_time
    per_function = {}
    for fid in config.functions:
        stats = agg["per_function"][fid]
        per_function[fid] = {
            "min_gap": stats["min_gap"],
            "mean_gap": stats["sum_gap"] / stats["count"] if stats["count"] else 0.0,
            "candidates": stats["candidates"],
        }
    return SweepSummary(
        samples=config.samples,
        records=agg["records"],
        functions=config.functions,
        min_gap=agg["min_gap"],
        argmin_index=agg["argmin_index"],
        argmin_function=agg["argmin_function"],
        candidate_counterexamples=agg["candidates"],
        monotonicity_violations=agg["mono_violations"],
        per_function=per_function,
        elapsed=elapsed,
    )


def replay_record(path, line_number: int) -> dict:
    """Recompute one record from its own fields and compare bit-for-bit.

    Floats are printed with 17 significant digits, so parsing and equality
    comparison are exact; any mismatch means the stream is not reproducible
    on this build.
    """
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not 1 <= line_number <= len(lines):
        raise ValueError(f"line {line_number} out of range 1..{len(lines)}")
    stored = json.loads(lines[line_number - 1])
    if stored.get("summary"):
        raise ValueError("the summary line cannot be replayed")
    rspec = RandomSpec(stored["seed"], stored["dim"], stored["ensemble"])
    function = builtin(stored["function"])
    records, _ = evaluate_sample(rspec, stored["index"], stored["n"], (function,))
    fresh = records[0]
    mismatches = {}
    for key in RECORD_FIELDS:
        old, new = stored[key], fresh[key]
        same = (old == new) if not isinstance(new, float) else (
            isinstance(old, (int, float)) and float(old) == float(new)
        )
        if old is None or new is None:
            same = old is None and new is None
        if not same:
            mismatches[key] = (old, new)
    return {"stored": stored, "recomputed": fresh, "mismatches": mismatches}
