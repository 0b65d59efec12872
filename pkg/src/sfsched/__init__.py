"""Superframe schedule optimization for slotted wireless sensor networks.

Six schedulers minimize defect time (idle plus lateness) over a TDMA
horizon: deadline-monotonic and earliest-deadline-first replay, a
generational genetic algorithm, a DMS-seeded genetic algorithm, and two
particle-swarm variants. All share one evaluator and one scenario model.
"""

from .base import BaseScheduler
from .baselines import (
    DmsScheduler,
    EdfScheduler,
    dms_schedule,
    dms_to_genotype,
    edf_schedule,
)
from .bench import (
    ALGORITHMS,
    RunStats,
    make_scheduler,
    run_experiment,
    scenario_seed,
    stats,
    suite,
    trace_dump,
)
from .evaluator import (
    decode_and_simulate,
    defect_time,
    evaluate_genotype,
    fitness,
    format_trace,
    schedulability_check,
    simulate_priority,
)
from .ga import GaScheduler, MgaScheduler
from .model import (
    BEACON,
    IDLE,
    DefectReport,
    ExecutionTrace,
    JobRecord,
    Scenario,
    TaskSpec,
    genotype_length,
    num_beacon_slots,
)
from .pso import OlpsoScheduler, PsoScheduler, decode_position, orthogonal_array
from .scenarios import (
    load_scenario,
    random_scenario,
    save_scenario,
    table1_scenario,
)
from .validation import (
    SchedulabilityWarning,
    ScenarioError,
    UnschedulableScenarioError,
    check_genotype,
    check_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "BEACON",
    "IDLE",
    "BaseScheduler",
    "DefectReport",
    "DmsScheduler",
    "EdfScheduler",
    "ExecutionTrace",
    "GaScheduler",
    "JobRecord",
    "MgaScheduler",
    "OlpsoScheduler",
    "PsoScheduler",
    "RunStats",
    "SchedulabilityWarning",
    "Scenario",
    "ScenarioError",
    "TaskSpec",
    "UnschedulableScenarioError",
    "check_genotype",
    "check_scenario",
    "decode_and_simulate",
    "decode_position",
    "defect_time",
    "dms_schedule",
    "dms_to_genotype",
    "edf_schedule",
    "evaluate_genotype",
    "fitness",
    "format_trace",
    "genotype_length",
    "load_scenario",
    "make_scheduler",
    "num_beacon_slots",
    "orthogonal_array",
    "random_scenario",
    "run_experiment",
    "save_scenario",
    "scenario_seed",
    "schedulability_check",
    "simulate_priority",
    "stats",
    "suite",
    "table1_scenario",
    "trace_dump",
]
