"""Scenario construction and the line-oriented scenario file format.

File format (UTF-8, whitespace-separated decimal integers, ``#`` starts a
comment, blank lines ignored)::

    slot_ms num_slots seed
    B  release computation deadline period
    N1 release computation deadline period
    N2 ...

Random scenarios draw from numpy's default PCG64 generator seeded with the
scenario seed, so any implementation using the same generator reproduces them
bit for bit. Draw order is per node: release, computation, deadline, period,
each a uniform slot multiple with deadline >= computation and
period >= deadline, so generated scenarios always satisfy the
computation <= deadline schedulability requirement.
"""

from __future__ import annotations

import warnings
from pathlib import Path
from typing import List, Union

import numpy as np

from .model import Scenario, TaskSpec
from .validation import SchedulabilityWarning, ScenarioError, check_scenario, is_schedulable

#: Fixed four-node reference task set (times in ms).
_TABLE1_BEACON = (0, 10, 10, 250)
_TABLE1_NODES = (
    (10, 20, 20, 150),
    (20, 20, 80, 80),
    (30, 30, 100, 100),
    (40, 10, 50, 50),
)

#: Random draw ranges in ms (inclusive), all slot multiples.
RELEASE_RANGE = (0, 100)
COMPUTATION_RANGE = (10, 30)
DEADLINE_MAX = 100
PERIOD_MAX = 250


def table1_scenario(num_slots: int = 100, seed: int = 0) -> Scenario:
    """The fixed four-node reference scenario with 10 ms slots."""
    beacon = TaskSpec(0, *_TABLE1_BEACON)
    nodes = tuple(
        TaskSpec(i, *fields) for i, fields in enumerate(_TABLE1_NODES, start=1)
    )
    return check_scenario(
        Scenario(slot_duration=10, num_slots=num_slots, beacon=beacon,
                 nodes=nodes, seed=seed)
    )


def random_scenario(n_nodes: int, num_slots: int, seed: int) -> Scenario:
    """Seeded random scenario: fixed beacon, n random nodes.

    Per node: release in [0, 100], computation in [10, 30], deadline in
    [computation, 100], period in [deadline, 250] ms, every value a 10 ms
    slot multiple.
    """
    if n_nodes < 1:
        raise ScenarioError("n_nodes must be >= 1")
    slot = 10
    rng = np.random.default_rng(seed)
    nodes = []
    for node_id in range(1, n_nodes + 1):
        release = slot * int(rng.integers(RELEASE_RANGE[0] // slot,
                                          RELEASE_RANGE[1] // slot + 1))
        computation = slot * int(rng.integers(COMPUTATION_RANGE[0] // slot,
                                              COMPUTATION_RANGE[1] // slot + 1))
        deadline = slot * int(rng.integers(computation // slot,
                                           DEADLINE_MAX // slot + 1))
        period = slot * int(rng.integers(deadline // slot,
                                         PERIOD_MAX // slot + 1))
        nodes.append(TaskSpec(node_id, release, computation, deadline, period))
    beacon = TaskSpec(0, *_TABLE1_BEACON)
    return check_scenario(
        Scenario(slot_duration=slot, num_slots=num_slots, beacon=beacon,
                 nodes=tuple(nodes), seed=seed)
    )


def _parse_stream(label: str, fields: List[str], lineno: int) -> List[int]:
    if len(fields) != 4:
        raise ScenarioError(
            f"line {lineno}: expected '{label} release computation deadline "
            f"period', got {len(fields)} value(s)"
        )
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise ScenarioError(f"line {lineno}: non-integer field") from None


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Parse a scenario file.

    Structural violations (bad multiples, deadline > period, malformed lines)
    raise ScenarioError. A computation > deadline stream only warns: such
    scenarios stay loadable so priority replay can demonstrate the damage.
    """
    path = Path(path)
    lines = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        text = raw.split("#", 1)[0].strip()
        if text:
            lines.append((lineno, text))
    if len(lines) < 2:
        raise ScenarioError(f"{path}: need a header line and a beacon line")

    lineno, header = lines[0]
    fields = header.split()
    if len(fields) != 3:
        raise ScenarioError(f"line {lineno}: expected 'slot_ms num_slots seed'")
    try:
        slot, num_slots, seed = (int(f) for f in fields)
    except ValueError:
        raise ScenarioError(f"line {lineno}: non-integer header field") from None

    lineno, beacon_line = lines[1]
    fields = beacon_line.split()
    if fields[0] != "B":
        raise ScenarioError(f"line {lineno}: second record must start with 'B'")
    beacon = TaskSpec(0, *_parse_stream("B", fields[1:], lineno))

    nodes = []
    for position, (lineno, text) in enumerate(lines[2:], start=1):
        fields = text.split()
        if fields[0] != f"N{position}":
            raise ScenarioError(
                f"line {lineno}: expected node 'N{position}', got {fields[0]!r}"
            )
        nodes.append(TaskSpec(position, *_parse_stream("N", fields[1:], lineno)))

    scenario = Scenario(slot_duration=slot, num_slots=num_slots, beacon=beacon,
                        nodes=tuple(nodes), seed=seed)
    check_scenario(scenario)
    if not is_schedulable(scenario):
        warnings.warn(
            f"{path}: some stream has computation > deadline; optimizers "
            "will reject this scenario",
            SchedulabilityWarning,
            stacklevel=2,
        )
    return scenario


def save_scenario(scenario: Scenario, path: Union[str, Path]) -> None:
    """Write a scenario file; load(save(s)) == s bit for bit."""
    lines = [f"{scenario.slot_duration} {scenario.num_slots} {scenario.seed}"]
    streams = [("B", scenario.beacon)]
    streams += [(f"N{n.node_id}", n) for n in scenario.nodes]
    for label, s in streams:
        lines.append(f"{label} {s.release} {s.computation} {s.deadline} {s.period}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
