"""Batch experiment runner with CSV and JSON reporting.

A run is a grid of (seed, algorithm) cells over one generator spec.
Cells are independent, so they can go to a process pool; output row
order is fixed by (seed, algorithm position) either way.  Revenue
fields are exact rationals; wall_ms is measurement noise and is the
one column excluded from reproducibility comparisons.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .approx import ApproxConfig, smp_approx, uudp_min_approx
from .core import SMP, UUDP_MIN, Instance, rat_from_json, rat_to_json
from .errors import CapExceededError, GeopricerError, InputError
from .exact import brute_force_smp, brute_force_uudp, solve_one_dim_uudp
from .generate import GeneratorSpec, generate, spec_from_json
from .qptas import qptas_uudp2, smp_special_case_dp
from .rng import SeedStream
from .subroutines import balcan_blum_approx

COLUMNS = (
    "seed", "n", "m", "d", "model", "algorithm",
    "revenue", "oracle_revenue", "ratio", "wall_ms",
)

ALGORITHMS = ("approx", "oracle", "one-dim", "balcan-blum", "qptas", "smp-dp")


def _solve(instance: Instance, algorithm: str, options: dict):
    seed = int(options.get("seed", 0))
    if algorithm == "approx":
        cfg = ApproxConfig(
            seed=seed,
            balcan_blum_trials=int(options.get("trials", 64)),
            brute_cap=int(options.get("brute_cap", 10_000_000)),
        )
        if instance.model == UUDP_MIN:
            solution, _ = uudp_min_approx(instance, cfg)
        else:
            solution, _ = smp_approx(instance, cfg)
        return solution
    if algorithm == "oracle":
        return _oracle(instance, options)
    if algorithm == "one-dim":
        return solve_one_dim_uudp(instance)
    if algorithm == "balcan-blum":
        return balcan_blum_approx(
            instance, int(options.get("trials", 64)), SeedStream(seed)
        )
    if algorithm == "qptas":
        epsilon = rat_from_json(options.get("epsilon", 1))
        return qptas_uudp2(instance, epsilon)
    if algorithm == "smp-dp":
        return smp_special_case_dp(instance)
    raise InputError(f"unknown algorithm {algorithm!r}")


def _oracle(instance: Instance, options: dict):
    cap = int(options.get("brute_cap", 10_000_000))
    if instance.model == UUDP_MIN:
        return brute_force_uudp(instance, cap=cap)
    return brute_force_smp(instance, cap=cap)


def run_single(spec_fields: dict, seed: int, algorithm: str, options: dict) -> dict:
    """One report row; exceptions become error rows, never crashes."""
    fields = dict(spec_fields)
    fields["seed"] = seed
    spec = spec_from_json(fields)
    row = {
        "seed": seed, "n": spec.n, "m": spec.m, "d": spec.d,
        "model": spec.model, "algorithm": algorithm,
        "revenue": "n/a", "oracle_revenue": "n/a", "ratio": "n/a",
        "wall_ms": 0.0,
    }
    cell_options = dict(options)
    cell_options.setdefault("seed", seed)
    try:
        instance = generate(spec)
        start = time.perf_counter_ns()
        solution = _solve(instance, algorithm, cell_options)
        row["wall_ms"] = (time.perf_counter_ns() - start) / 1e6
        row["revenue"] = solution.revenue
    except GeopricerError as exc:
        row["revenue"] = f"error: {exc}"
        return row
    if cell_options.get("oracle", True) and algorithm != "oracle":
        try:
            oracle = _oracle(instance, cell_options).revenue
        except CapExceededError:
            return row
        row["oracle_revenue"] = oracle
        if solution.revenue == oracle:
            row["ratio"] = Fraction(1)
        elif solution.revenue == 0:
            row["ratio"] = "inf"
        else:
            row["ratio"] = oracle / solution.revenue
    return row


@dataclass
class ExperimentReport:
    rows: list[dict]

    @property
    def aggregates(self) -> dict:
        ratios = sorted(
            row["ratio"] for row in self.rows
            if isinstance(row["ratio"], Fraction)
        )
        if not ratios:
            return {"rows": len(self.rows), "ratios": 0}
        k = len(ratios)
        median = (
            ratios[k // 2] if k % 2 else (ratios[k // 2 - 1] + ratios[k // 2]) / 2
        )
        return {
            "rows": len(self.rows),
            "ratios": k,
            "mean_ratio": sum(ratios) / k,
            "median_ratio": median,
            "max_ratio": ratios[-1],
        }

    def _cell(self, value):
        if isinstance(value, Fraction):
            return rat_to_json(value)
        return value

    def to_csv(self, path: str) -> None:
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(COLUMNS)
            for row in self.rows:
                writer.writerow([str(self._cell(row[col])) for col in COLUMNS])

    def to_json(self, path: str) -> None:
        payload = {
            "rows": [
                {col: self._cell(row[col]) for col in COLUMNS}
                for row in self.rows
            ],
            "aggregates": {
                key: self._cell(value)
                for key, value in self.aggregates.items()
            },
        }
        with open(path, "w") as handle:
            json.dump(payload, handle, indent=2)
            handle.write("\n")


def _seed_list(config: dict) -> list[int]:
    if "seeds" in config:
        return [int(s) for s in config["seeds"]]
    start = int(config.get("seed_start", 0))
    count = int(config.get("seed_count", 10))
    return list(range(start, start + count))


def run_experiment(config: dict) -> ExperimentReport:
    """Config keys: spec (generator fields), seeds or seed_start/seed_count,
    algorithms, oracle (bool), workers, plus per-algorithm options."""
    spec_fields = dict(config.get("spec", {}))
    spec_fields.pop("seed", None)
    algorithms = list(config.get("algorithms", ["approx"]))
    for name in algorithms:
        if name not in ALGORITHMS:
            raise InputError(f"unknown algorithm {name!r}")
    options = {
        key: config[key]
        for key in ("oracle", "trials", "epsilon", "brute_cap", "seed")
        if key in config
    }
    seeds = _seed_list(config)
    cells = [(seed, algo) for seed in seeds for algo in algorithms]
    workers = int(config.get("workers", 1))
    if workers > 1 and cells:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(
                pool.map(
                    _pool_cell,
                    [(spec_fields, seed, algo, options) for seed, algo in cells],
                )
            )
    else:
        rows = [run_single(spec_fields, seed, algo, options) for seed, algo in cells]
    return ExperimentReport(rows)


def _pool_cell(args) -> dict:
    spec_fields, seed, algo, options = args
    return run_single(spec_fields, seed, algo, options)
