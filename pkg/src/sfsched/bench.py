"""Benchmark harness: algorithm x scenario x repetitions with CSV reports.

Per-rep seeds are base_seed + rep_index. The deterministic schedulers (DMS,
EDF) run once and replicate their value across reps with sigma 0. Timing
wraps the optimizer call only; peak memory is a tracemalloc high-water
estimate and is informational (tracemalloc also slows the measured run).
"""

from __future__ import annotations

import csv
import statistics
import time
import tracemalloc
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .baselines import DmsScheduler, EdfScheduler
from .evaluator import format_trace
from .ga import GaScheduler, MgaScheduler
from .model import Scenario
from .pso import OlpsoScheduler, PsoScheduler
from .scenarios import random_scenario, table1_scenario
from .validation import ScenarioError

ALGORITHMS = ("dms", "edf", "ga", "mga", "pso", "olpso")
_DETERMINISTIC = ("dms", "edf")
_ESTIMATORS = {
    "dms": DmsScheduler,
    "edf": EdfScheduler,
    "ga": GaScheduler,
    "mga": MgaScheduler,
    "pso": PsoScheduler,
    "olpso": OlpsoScheduler,
}
_CONFIG_ALIASES = {"olpso_reconstruction_gap": "reconstruction_gap"}


@dataclass(frozen=True)
class RunStats:
    """Aggregated outcome of one (scenario, algorithm) experiment."""

    algorithm: str
    scenario_id: str
    reps: int
    defects: Tuple[int, ...]
    mean: float
    sigma: float
    sigma_defined: bool
    wall_times: Tuple[float, ...]
    peak_memory: Tuple[int, ...]


def stats(values: Sequence[float]) -> Tuple[float, float]:
    """Arithmetic mean and sample standard deviation (divisor n-1).

    A single value has undefined sigma; it is reported as 0.
    """
    values = list(values)
    if not values:
        raise ValueError("stats needs at least one value")
    mean = statistics.mean(values)
    sigma = statistics.stdev(values) if len(values) > 1 else 0.0
    return float(mean), float(sigma)


def make_scheduler(algorithm: str, seed: int = 0, config: Optional[Dict] = None):
    """Build the named scheduler with config-file overrides applied."""
    algorithm = algorithm.lower()
    if algorithm not in ALGORITHMS:
        raise ValueError(
            f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}"
        )
    cls = _ESTIMATORS[algorithm]
    if algorithm in _DETERMINISTIC:
        return cls()
    kwargs = {"seed": seed}
    kwargs.update(_config_kwargs(algorithm, config))
    kwargs["seed"] = seed
    return cls(**kwargs)


def _config_kwargs(algorithm: str, config: Optional[Dict]) -> Dict:
    """Keys valid for this algorithm's estimator; others must fit a sibling.

    A key=value config file may mix GA and swarm keys; each algorithm takes
    its own. Keys no algorithm understands raise. "variant", when present,
    must agree with the chosen algorithm; "seed" is rejected because per-rep
    seeds come from the experiment base seed.
    """
    if not config:
        return {}
    known: Dict[str, set] = {
        name: set(_ESTIMATORS[name]().get_params())
        for name in ALGORITHMS
        if name not in _DETERMINISTIC
    }
    out = {}
    for raw_key, value in config.items():
        key = _CONFIG_ALIASES.get(raw_key, raw_key)
        if raw_key == "seed":
            raise ValueError("config file cannot set seed; use the base seed")
        if raw_key == "variant":
            if str(value).lower() != algorithm and algorithm in ("pso", "olpso"):
                raise ValueError(
                    f"config variant={value} conflicts with algorithm {algorithm}"
                )
            continue
        if all(key not in params for params in known.values()):
            raise ValueError(f"unknown config key {raw_key!r}")
        if key in known.get(algorithm, set()):
            out[key] = value
    return out


def _measured_fit(scheduler, scenario: Scenario, measure: bool):
    if measure:
        tracemalloc.start()
    start = time.perf_counter()
    scheduler.fit(scenario)
    elapsed = time.perf_counter() - start
    peak = 0
    if measure:
        _, peak = tracemalloc.get_traced_memory()
        tracemalloc.stop()
    else:
        elapsed = 0.0
    return scheduler.report_.defect_time, elapsed, peak


def run_experiment(
    scenario: Scenario,
    algorithm: str,
    reps: int = 10,
    base_seed: int = 0,
    config: Optional[Dict] = None,
    scenario_id: str = "",
    measure: bool = True,
) -> RunStats:
    """Run one (scenario, algorithm) cell for ``reps`` repetitions."""
    algorithm = algorithm.lower()
    if algorithm not in ALGORITHMS:
        raise ValueError(
            f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}"
        )
    if reps < 1:
        raise ValueError("reps must be >= 1")
    defects: List[int] = []
    times: List[float] = []
    peaks: List[int] = []
    if algorithm in _DETERMINISTIC:
        defect, elapsed, peak = _measured_fit(
            make_scheduler(algorithm), scenario, measure
        )
        defects = [defect] * reps
        times = [elapsed] * reps
        peaks = [peak] * reps
    else:
        for rep in range(reps):
            scheduler = make_scheduler(algorithm, seed=base_seed + rep,
                                       config=config)
            defect, elapsed, peak = _measured_fit(scheduler, scenario, measure)
            defects.append(defect)
            times.append(elapsed)
            peaks.append(peak)
    mean, sigma = stats(defects)
    return RunStats(
        algorithm=algorithm,
        scenario_id=scenario_id,
        reps=reps,
        defects=tuple(defects),
        mean=mean,
        sigma=sigma,
        sigma_defined=reps > 1,
        wall_times=tuple(times),
        peak_memory=tuple(peaks),
    )


def scenario_seed(n_nodes: int, num_slots: int) -> int:
    """Seed convention for generated benchmark scenarios."""
    return n_nodes * 1000 + num_slots


def build_scenario(num_slots: int, n_nodes: int) -> Tuple[str, Scenario]:
    """Benchmark cell scenario: the fixed 4-node set, or a seeded random one."""
    if n_nodes == 4:
        return f"table1_{num_slots}", table1_scenario(num_slots)
    seed = scenario_seed(n_nodes, num_slots)
    return f"rand{n_nodes}_{num_slots}", random_scenario(n_nodes, num_slots, seed)


def _run_cell(args) -> Tuple[Tuple[int, int, str], RunStats]:
    slots, nodes, algorithm, reps, base_seed, config, measure = args
    scenario_id, scenario = build_scenario(slots, nodes)
    result = run_experiment(scenario, algorithm, reps=reps, base_seed=base_seed,
                            config=config, scenario_id=scenario_id,
                            measure=measure)
    return (slots, nodes, algorithm), result


def suite(
    slots_list: Iterable[int] = (100, 200, 500),
    nodes_list: Iterable[int] = (4, 7, 10, 100),
    algorithms: Iterable[str] = ALGORITHMS,
    reps: int = 10,
    base_seed: int = 0,
    out_dir: Union[str, Path] = ".",
    config: Optional[Dict] = None,
    jobs: int = 1,
    include_timing: bool = True,
) -> Tuple[Path, Path, List[RunStats]]:
    """Run the benchmark matrix and write summary and raw CSVs.

    Output rows are ordered by (slots, nodes, algorithm, rep) regardless of
    completion order, so results are a pure function of the inputs; with
    include_timing=False the time and memory columns are zeroed and reruns
    are byte-identical. A scenario that fails to construct drops only its own
    rows.
    """
    algorithms = sorted(a.lower() for a in algorithms)
    for algorithm in algorithms:
        if algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {algorithm!r}")
    cells = []
    skipped = []
    for slots in slots_list:
        for nodes in nodes_list:
            try:
                build_scenario(slots, nodes)
            except ScenarioError as exc:
                skipped.append((slots, nodes, str(exc)))
                continue
            for algorithm in algorithms:
                cells.append((slots, nodes, algorithm, reps, base_seed, config,
                              include_timing))

    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_cell, cells))
    else:
        outcomes = [_run_cell(cell) for cell in cells]
    outcomes.sort(key=lambda item: item[0])

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary_path = out_dir / "results.csv"
    raw_path = out_dir / "raw.csv"

    with summary_path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["slots", "nodes", "scenario", "algorithm", "reps",
                         "mean_defect_ms", "sigma", "mean_time_s",
                         "peak_mem_bytes"])
        for (slots, nodes, _), result in outcomes:
            writer.writerow([
                slots, nodes, result.scenario_id, result.algorithm, result.reps,
                _format_number(result.mean), _format_number(result.sigma),
                _format_number(statistics.mean(result.wall_times)),
                max(result.peak_memory),
            ])
    with raw_path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["slots", "nodes", "scenario", "algorithm", "rep",
                         "seed", "defect_ms", "time_s", "peak_mem_bytes"])
        for (slots, nodes, algorithm), result in outcomes:
            for rep in range(result.reps):
                seed = base_seed if algorithm in _DETERMINISTIC else base_seed + rep
                writer.writerow([
                    slots, nodes, result.scenario_id, result.algorithm, rep,
                    seed, result.defects[rep],
                    _format_number(result.wall_times[rep]),
                    result.peak_memory[rep],
                ])
    for slots, nodes, reason in skipped:
        print(f"skipped {slots} slots x {nodes} nodes: {reason}")
    return summary_path, raw_path, [result for _, result in outcomes]


def _format_number(value: float) -> str:
    """Integral floats print as integers; others keep full repr precision."""
    if value == int(value):
        return str(int(value))
    return repr(value)


def trace_dump(
    scenario: Scenario,
    algorithm: str,
    seed: int = 0,
    path: Union[str, Path] = "trace.txt",
    config: Optional[Dict] = None,
):
    """Write the per-slot trace plus a summary line; returns the report."""
    scheduler = make_scheduler(algorithm, seed=seed, config=config)
    scheduler.fit(scenario)
    report = scheduler.report_
    summary = (
        f"idle={report.idle_slots} missed={report.missed_deadline_count} "
        f"defect={report.defect_time}"
    )
    Path(path).write_text(format_trace(scheduler.trace_) + summary + "\n",
                          encoding="utf-8")
    return report


def recompute_stats(raw_csv: Union[str, Path]) -> List[Tuple[str, str, float, float]]:
    """Recompute (mean, sigma) per (scenario, algorithm) from a raw CSV."""
    groups: Dict[Tuple[str, str], List[int]] = {}
    order: List[Tuple[str, str]] = []
    with Path(raw_csv).open(newline="", encoding="utf-8") as handle:
        for row in csv.DictReader(handle):
            key = (row["scenario"], row["algorithm"])
            if key not in groups:
                groups[key] = []
                order.append(key)
            groups[key].append(int(row["defect_ms"]))
    results = []
    for key in order:
        mean, sigma = stats(groups[key])
        results.append((key[0], key[1], mean, sigma))
    return results
