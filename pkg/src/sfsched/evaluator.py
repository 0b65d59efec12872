"""Trace simulation and defect scoring: the fitness oracle for every scheduler.

Job semantics: each stream (beacon or node) releases one job per period. A job
is runnable in the slot starting at T when release <= T < deadline and work
remains; because deadline <= period, at most one job per stream is ever live.
A job still unfinished when T reaches its deadline is aborted there: it counts
as one missed deadline and is charged the service window it failed to use,
(deadline - release) - executed ms. Completed jobs are charged
max(0, completion - deadline), which the abort rule keeps at zero. Jobs whose
deadline lies beyond the horizon are never charged.
"""

from __future__ import annotations

from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .model import (
    BEACON,
    IDLE,
    DefectReport,
    ExecutionTrace,
    JobRecord,
    Scenario,
    num_beacon_slots,
)
from .validation import check_genotype

#: Priority policy kinds accepted by simulate_priority.
DMS = "dms"
EDF = "edf"


@lru_cache(maxsize=128)
def _job_table(scenario: Scenario) -> Tuple[Tuple[Tuple[int, int, int], ...], ...]:
    """Per-stream job lists in slot units: (release, deadline, computation)."""
    slot = scenario.slot_duration
    table = []
    for spec in (scenario.beacon, *scenario.nodes):
        jobs = []
        release = spec.release // slot
        deadline = spec.deadline // slot
        computation = spec.computation // slot
        period = spec.period // slot
        while release < scenario.num_slots:
            jobs.append((release, release + deadline, computation))
            release += period
        table.append(tuple(jobs))
    return tuple(table)


def _walk(
    scenario: Scenario,
    genes: Optional[Sequence[int]] = None,
    policy: Optional[str] = None,
) -> Tuple[List[int], list, list, list]:
    """Slot walk shared by genotype decoding and priority replay.

    Exactly one of genes/policy drives the non-beacon slots. Returns the slot
    outcomes plus per-stream executed/completion state aligned with
    _job_table(scenario).
    """
    table = _job_table(scenario)
    n_streams = len(table)
    ptr = [0] * n_streams
    rem = [[comp for _, _, comp in jobs] for jobs in table]
    exe = [[0] * len(jobs) for jobs in table]
    done: List[List[int]] = [[-1] * len(jobs) for jobs in table]
    slots: List[int] = []
    cursor = 0

    if policy == DMS:
        rank = [0] + [spec.deadline for spec in scenario.nodes]

    def ready(stream: int, now: int) -> int:
        """Index of the stream's live runnable job at ``now``, or -1.

        Advances the stream pointer past finished and dead jobs on the way.
        """
        jobs = table[stream]
        p = ptr[stream]
        remaining = rem[stream]
        while p < len(jobs) and (remaining[p] == 0 or jobs[p][1] <= now):
            p += 1
        ptr[stream] = p
        if p < len(jobs) and jobs[p][0] <= now:
            return p
        return -1

    for now in range(scenario.num_slots):
        stream, job = -1, -1
        b = ready(BEACON, now)
        if b >= 0:
            stream, job = BEACON, b
        elif genes is not None:
            if cursor < len(genes):
                s = genes[cursor]
                j = ready(s, now)
                if j >= 0:
                    stream, job = s, j
                    cursor += 1
        else:
            best = None
            for s in range(1, n_streams):
                j = ready(s, now)
                if j < 0:
                    continue
                key = (rank[s], s) if policy == DMS else (table[s][j][1], s)
                if best is None or key < best[0]:
                    best = (key, s, j)
            if best is not None:
                stream, job = best[1], best[2]
        if stream < 0:
            slots.append(IDLE)
        else:
            slots.append(stream)
            rem[stream][job] -= 1
            exe[stream][job] += 1
            if rem[stream][job] == 0:
                done[stream][job] = now + 1
    return slots, table, exe, done


def _build_trace(scenario: Scenario, walked) -> ExecutionTrace:
    slots, table, exe, done = walked
    slot = scenario.slot_duration
    records = []
    for stream, jobs in enumerate(table):
        for index, (release, deadline, _comp) in enumerate(jobs):
            completion = done[stream][index]
            records.append(
                JobRecord(
                    node_id=stream,
                    job_index=index,
                    release_ms=release * slot,
                    deadline_ms=deadline * slot,
                    executed_ms=exe[stream][index] * slot,
                    completion_ms=completion * slot if completion >= 0 else None,
                )
            )
    return ExecutionTrace(slots=tuple(slots), records=tuple(records))


def decode_and_simulate(scenario: Scenario, genotype: Sequence[int]) -> ExecutionTrace:
    """Decode a genotype into an execution trace.

    The gene cursor starts at 0 and only advances when its gene executes: a
    released, unfinished beacon job always wins the slot (cursor untouched);
    otherwise the node named by the current gene executes if it has a live
    runnable job; otherwise the slot is idle and the cursor stalls.
    """
    genes = check_genotype(genotype, scenario)
    return _build_trace(scenario, _walk(scenario, genes=genes))


def simulate_priority(scenario: Scenario, kind: str) -> ExecutionTrace:
    """Replay a priority policy: ``"dms"`` or ``"edf"``.

    Each slot runs the highest-priority live runnable job, the beacon
    strictly first; deadline ties break toward the lowest node id. DMS ranks
    nodes by relative deadline, EDF by the live job's absolute deadline.
    """
    if kind not in (DMS, EDF):
        raise ValueError(f"unknown policy {kind!r}; expected 'dms' or 'edf'")
    return _build_trace(scenario, _walk(scenario, policy=kind))


def defect_time(trace: ExecutionTrace, scenario: Scenario) -> DefectReport:
    """Score a trace: defect_time = idle_time + lateness_time.

    The horizon used for charging is the trace's own length, so extending a
    trace with idle slots can only increase the defect.
    """
    slot = scenario.slot_duration
    horizon_ms = len(trace.slots) * slot
    idle_slots = trace.slots.count(IDLE)
    lateness = 0
    missed = 0
    for record in trace.records:
        if record.completion_ms is not None:
            over = record.completion_ms - record.deadline_ms
            if over > 0:
                lateness += over
                missed += 1
        elif record.deadline_ms <= horizon_ms:
            missed += 1
            lateness += (record.deadline_ms - record.release_ms) - record.executed_ms
    idle_time = idle_slots * slot
    defect = idle_time + lateness
    return DefectReport(
        idle_slots=idle_slots,
        idle_time=idle_time,
        lateness_time=lateness,
        missed_deadline_count=missed,
        defect_time=defect,
        fitness=_fitness_value(defect),
    )


def _fitness_value(defect: int) -> float:
    return 1.0 if defect == 0 else 1.0 / defect


def fitness(report: DefectReport) -> float:
    """1 when defect_time is 0, else 1/defect_time."""
    return _fitness_value(report.defect_time)


def schedulability_check(scenario: Scenario) -> bool:
    """True iff computation <= deadline for the beacon and every node."""
    return all(
        s.computation <= s.deadline for s in (scenario.beacon, *scenario.nodes)
    )


def evaluate_genotype(scenario: Scenario, genotype: Sequence[int]) -> DefectReport:
    """Decode and score in one call."""
    return defect_time(decode_and_simulate(scenario, genotype), scenario)


def format_trace(trace: ExecutionTrace) -> str:
    """Render a trace as one line per slot: ``index<TAB>B|N<k>|-``.

    Slot indices are 1-based.
    """
    parts = []
    for index, entry in enumerate(trace.slots, start=1):
        if entry == BEACON:
            label = "B"
        elif entry == IDLE:
            label = "-"
        else:
            label = f"N{entry}"
        parts.append(f"{index}\t{label}")
    return "\n".join(parts) + "\n"


def beacon_slot_check(trace: ExecutionTrace, scenario: Scenario) -> bool:
    """True iff beacon entries occupy exactly the slots its jobs demand."""
    expected = num_beacon_slots(scenario)
    return trace.slots.count(BEACON) == expected
