"""Input validation helpers and error types."""

from __future__ import annotations

import operator
from typing import Sequence

from .model import Scenario, TaskSpec, genotype_length


class ScenarioError(ValueError):
    """Structurally invalid scenario or task spec."""


class UnschedulableScenarioError(ScenarioError):
    """Scenario violates computation <= deadline on some stream.

    Raised by the optimizers; priority replay (DMS/EDF) stays available for
    such scenarios so the resulting damage can be inspected.
    """


class SchedulabilityWarning(UserWarning):
    """Loaded scenario violates computation <= deadline on some stream."""


def check_taskspec(spec: TaskSpec, slot_duration: int, label: str = "task") -> None:
    """Validate one stream against the slotted time base.

    deadline <= period is required: the job model assumes at most one live
    job per stream.
    """
    for name in ("release", "computation", "deadline", "period"):
        value = getattr(spec, name)
        if not isinstance(value, int) or isinstance(value, bool):
            raise ScenarioError(f"{label}: {name} must be an integer, got {value!r}")
        if value < 0:
            raise ScenarioError(f"{label}: {name} must be nonnegative, got {value}")
        if value % slot_duration != 0:
            raise ScenarioError(
                f"{label}: {name}={value} is not a multiple of the "
                f"{slot_duration} ms slot duration"
            )
    if spec.computation < slot_duration:
        raise ScenarioError(f"{label}: computation must be at least one slot")
    if spec.period < slot_duration:
        raise ScenarioError(f"{label}: period must be at least one slot")
    if spec.deadline > spec.period:
        raise ScenarioError(
            f"{label}: deadline {spec.deadline} exceeds period {spec.period}"
        )


def check_scenario(scenario: Scenario) -> Scenario:
    """Validate scenario structure; returns the scenario for chaining."""
    if scenario.slot_duration <= 0:
        raise ScenarioError("slot_duration must be positive")
    if scenario.num_slots <= 0:
        raise ScenarioError("num_slots must be positive")
    if scenario.seed < 0:
        raise ScenarioError("seed must be a nonnegative 64-bit integer")
    beacon = scenario.beacon
    if beacon.node_id != 0:
        raise ScenarioError("beacon must have node_id 0")
    if beacon.release != 0:
        raise ScenarioError("beacon release must be 0")
    check_taskspec(beacon, scenario.slot_duration, "beacon")
    for position, node in enumerate(scenario.nodes, start=1):
        if node.node_id != position:
            raise ScenarioError(
                f"node ids must be 1..n in list order; position {position} "
                f"has id {node.node_id}"
            )
        check_taskspec(node, scenario.slot_duration, f"node {node.node_id}")
    if scenario.num_slots * scenario.slot_duration < beacon.period:
        raise ScenarioError(
            "horizon must cover at least one full beacon cycle "
            f"({beacon.period // scenario.slot_duration} slots)"
        )
    return scenario


def is_schedulable(scenario: Scenario) -> bool:
    """True iff computation <= deadline holds for the beacon and every node."""
    streams = (scenario.beacon, *scenario.nodes)
    return all(s.computation <= s.deadline for s in streams)


def check_schedulable(scenario: Scenario) -> Scenario:
    """Raise UnschedulableScenarioError unless computation <= deadline holds."""
    if not is_schedulable(scenario):
        bad = [
            s.node_id
            for s in (scenario.beacon, *scenario.nodes)
            if s.computation > s.deadline
        ]
        raise UnschedulableScenarioError(
            f"streams {bad} have computation > deadline; no schedule can "
            "meet their deadlines"
        )
    return scenario


def check_genotype(genes: Sequence[int], scenario: Scenario) -> tuple:
    """Validate gene length and range; returns the genes as a tuple of ints."""
    try:
        genes = tuple(operator.index(g) for g in genes)
    except TypeError as exc:
        raise ValueError(f"genes must be integers: {exc}") from None
    expected = genotype_length(scenario)
    if len(genes) != expected:
        raise ValueError(
            f"genotype length {len(genes)} != {expected} non-beacon slots"
        )
    n = scenario.n_nodes
    for g in genes:
        if not 1 <= g <= n:
            raise ValueError(f"gene {g} outside node index range [1, {n}]")
    return genes
