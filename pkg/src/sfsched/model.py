"""Domain types shared by the schedulers and the evaluator.

All time quantities are integer milliseconds and must be multiples of the
scenario slot duration; arithmetic stays integral end to end, floats appear
only in fitness values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

#: Trace slot markers: the beacon is stream 0, nodes are 1..n, idle is -1.
BEACON = 0
IDLE = -1


@dataclass(frozen=True)
class TaskSpec:
    """One periodic message stream (the beacon or a sensor node).

    :param node_id: stream index; 0 is reserved for the beacon
    :param release: first release time in ms
    :param computation: execution demand per job in ms
    :param deadline: deadline in ms relative to each release
    :param period: release period in ms
    """

    node_id: int
    release: int
    computation: int
    deadline: int
    period: int


@dataclass(frozen=True)
class Scenario:
    """A scheduling problem instance: a slotted horizon plus task streams."""

    slot_duration: int
    num_slots: int
    beacon: TaskSpec
    nodes: Tuple[TaskSpec, ...]
    seed: int = 0

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def horizon_ms(self) -> int:
        return self.slot_duration * self.num_slots


@dataclass(frozen=True)
class JobRecord:
    """Outcome of one released job.

    ``completion_ms`` is None when the job did not finish: either it was
    aborted at its deadline, or the horizon ended first (deadline beyond the
    horizon). ``executed_ms`` counts the service it actually received.
    """

    node_id: int
    job_index: int
    release_ms: int
    deadline_ms: int
    executed_ms: int
    completion_ms: Optional[int]


@dataclass(frozen=True)
class ExecutionTrace:
    """Per-slot outcome over the horizon plus per-job completion records.

    ``slots[i]`` is BEACON, IDLE, or the node index executed in slot i.
    """

    slots: Tuple[int, ...]
    records: Tuple[JobRecord, ...]


@dataclass(frozen=True)
class DefectReport:
    """Defect accounting for one execution trace.

    defect_time = idle_time + lateness_time; fitness is 1 when defect_time is
    0 and 1/defect_time otherwise.
    """

    idle_slots: int
    idle_time: int
    lateness_time: int
    missed_deadline_count: int
    defect_time: int
    fitness: float


def num_beacon_slots(scenario: Scenario) -> int:
    """Number of horizon slots consumed by beacon jobs.

    The beacon always has top priority, so each of its jobs occupies
    computation/slot_duration consecutive slots from its release; a job
    truncated by the horizon still contributes its in-horizon slots.
    """
    slot = scenario.slot_duration
    comp_slots = scenario.beacon.computation // slot
    period_slots = scenario.beacon.period // slot
    release_slot = scenario.beacon.release // slot
    total = 0
    while release_slot < scenario.num_slots:
        total += min(comp_slots, scenario.num_slots - release_slot)
        release_slot += period_slots
    return total


def genotype_length(scenario: Scenario) -> int:
    """Gene count for this scenario: non-beacon slots in the horizon."""
    return scenario.num_slots - num_beacon_slots(scenario)
