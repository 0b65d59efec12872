"""Command-line interface.

Subcommands: run (one scenario+algorithm), suite (benchmark matrix), trace
(per-slot trace dump), gen (random scenario to file), stats (recompute from a
raw CSV). The default output directory is $SFSCHED_OUT, falling back to the
current directory.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from pathlib import Path
from typing import Dict, Optional

from .bench import (
    ALGORITHMS,
    build_scenario,
    recompute_stats,
    run_experiment,
    suite,
    trace_dump,
)
from .scenarios import load_scenario, random_scenario, save_scenario

ENV_OUT = "SFSCHED_OUT"


def _default_out() -> str:
    return os.environ.get(ENV_OUT, ".")


def load_config(path: str) -> Dict:
    """Parse a key=value config file; values become int, then float, else str."""
    config: Dict = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        key, _, value = text.partition("=")
        key = key.strip()
        value = value.strip()
        for cast in (int, float):
            try:
                config[key] = cast(value)
                break
            except ValueError:
                continue
        else:
            config[key] = value
    return config


def _resolve_scenario(args) -> tuple:
    """Scenario from --scenario, else from the --slots/--nodes conventions."""
    if args.scenario:
        scenario = load_scenario(args.scenario)
        return Path(args.scenario).stem, scenario
    if args.slots is None or args.nodes is None:
        raise SystemExit("need --scenario FILE or both --slots and --nodes")
    return build_scenario(args.slots, args.nodes)


def _add_common(parser, reps=True):
    parser.add_argument("--scenario", help="scenario file to load")
    parser.add_argument("--slots", type=int, help="horizon length in slots")
    parser.add_argument("--nodes", type=int,
                        help="node count (4 selects the fixed reference set)")
    parser.add_argument("--algo", default="mga",
                        help=f"algorithm: one of {', '.join(ALGORITHMS)}")
    if reps:
        parser.add_argument("--reps", type=int, default=10,
                            help="repetitions (seeds base_seed..base_seed+reps-1)")
    parser.add_argument("--seed", type=int, default=0, help="base seed")
    parser.add_argument("--config", help="key=value config file")
    parser.add_argument("--out", default=None,
                        help=f"output directory (default ${ENV_OUT} or .)")


def _config_of(args) -> Optional[Dict]:
    return load_config(args.config) if args.config else None


def _cmd_run(args) -> int:
    scenario_id, scenario = _resolve_scenario(args)
    result = run_experiment(scenario, args.algo, reps=args.reps,
                            base_seed=args.seed, config=_config_of(args),
                            scenario_id=scenario_id)
    sigma = f"{result.sigma:.5f}" if result.sigma_defined else "undefined(0)"
    print(f"scenario={scenario_id} algorithm={result.algorithm} "
          f"reps={result.reps} mean_defect_ms={result.mean:g} sigma={sigma}")
    print("defects_ms=" + ",".join(str(d) for d in result.defects))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"run_{scenario_id}_{result.algorithm}.csv"
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["scenario", "algorithm", "rep", "seed",
                             "defect_ms", "time_s", "peak_mem_bytes"])
            deterministic = result.algorithm in ("dms", "edf")
            for rep in range(result.reps):
                seed = args.seed if deterministic else args.seed + rep
                writer.writerow([scenario_id, result.algorithm, rep, seed,
                                 result.defects[rep],
                                 repr(result.wall_times[rep]),
                                 result.peak_memory[rep]])
        print(f"wrote {path}")
    return 0


def _cmd_suite(args) -> int:
    out = args.out or _default_out()
    slots = [int(s) for s in args.slots.split(",")]
    nodes = [int(n) for n in args.nodes.split(",")]
    algos = ALGORITHMS if args.algo == "all" else args.algo.split(",")
    summary, raw, _ = suite(slots, nodes, algos, reps=args.reps,
                            base_seed=args.seed, out_dir=out,
                            config=_config_of(args), jobs=args.jobs,
                            include_timing=not args.no_timing)
    print(f"wrote {summary}")
    print(f"wrote {raw}")
    return 0


def _cmd_trace(args) -> int:
    scenario_id, scenario = _resolve_scenario(args)
    out = Path(args.out or _default_out())
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"trace_{scenario_id}_{args.algo.lower()}.txt"
    report = trace_dump(scenario, args.algo, seed=args.seed, path=path,
                        config=_config_of(args))
    print(f"wrote {path}")
    print(f"idle={report.idle_slots} missed={report.missed_deadline_count} "
          f"defect={report.defect_time}")
    return 0


def _cmd_gen(args) -> int:
    scenario = random_scenario(args.nodes, args.slots, args.seed)
    out = Path(args.out or _default_out())
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"rand{args.nodes}_{args.slots}.txt"
    save_scenario(scenario, path)
    print(f"wrote {path}")
    return 0


def _cmd_stats(args) -> int:
    rows = recompute_stats(args.raw_csv)
    print(f"{'scenario':<16} {'algorithm':<10} {'mean':>12} {'sigma':>12}")
    for scenario_id, algorithm, mean, sigma in rows:
        print(f"{scenario_id:<16} {algorithm:<10} {mean:>12g} {sigma:>12.5f}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sfsched",
        description="Superframe schedule optimization benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="one scenario + algorithm")
    _add_common(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_suite = sub.add_parser("suite", help="benchmark matrix to CSV")
    p_suite.add_argument("--slots", default="100,200,500",
                         help="comma-separated horizon list")
    p_suite.add_argument("--nodes", default="4,7,10,100",
                         help="comma-separated node-count list")
    p_suite.add_argument("--algo", default="all",
                         help="'all' or comma-separated algorithm list")
    p_suite.add_argument("--reps", type=int, default=10)
    p_suite.add_argument("--seed", type=int, default=0, help="base seed")
    p_suite.add_argument("--config", help="key=value config file")
    p_suite.add_argument("--out", default=None,
                         help=f"output directory (default ${ENV_OUT} or .)")
    p_suite.add_argument("--jobs", type=int, default=1,
                         help="parallel worker processes")
    p_suite.add_argument("--no-timing", action="store_true",
                         help="zero time/memory columns for byte-identical reruns")
    p_suite.set_defaults(func=_cmd_suite)

    p_trace = sub.add_parser("trace", help="write a per-slot trace")
    _add_common(p_trace, reps=False)
    p_trace.set_defaults(func=_cmd_trace)

    p_gen = sub.add_parser("gen", help="write a random scenario file")
    p_gen.add_argument("--nodes", type=int, required=True)
    p_gen.add_argument("--slots", type=int, required=True)
    p_gen.add_argument("--seed", type=int, default=0, help="scenario seed")
    p_gen.add_argument("--out", default=None,
                       help=f"output directory (default ${ENV_OUT} or .)")
    p_gen.set_defaults(func=_cmd_gen)

    p_stats = sub.add_parser("stats", help="recompute stats from a raw CSV")
    p_stats.add_argument("raw_csv")
    p_stats.set_defaults(func=_cmd_stats)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
