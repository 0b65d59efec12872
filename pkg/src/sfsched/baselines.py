"""Non-metaheuristic schedulers: deadline-monotonic and earliest-deadline-first.

Both replay a priority policy over the horizon; neither uses randomness. The
DMS trace can also be converted into a genotype, which seeds the modified
genetic algorithm.
"""

from __future__ import annotations

from typing import Tuple

from .base import BaseScheduler
from .evaluator import DMS, EDF, defect_time, simulate_priority
from .model import BEACON, IDLE, ExecutionTrace, Scenario
from .validation import check_genotype, check_scenario


def dms_schedule(scenario: Scenario) -> ExecutionTrace:
    """Static priority by ascending relative deadline, beacon first."""
    return simulate_priority(scenario, DMS)


def edf_schedule(scenario: Scenario) -> ExecutionTrace:
    """Dynamic priority by earliest absolute deadline, beacon first."""
    return simulate_priority(scenario, EDF)


def _next_release(spec, now_ms: int) -> int:
    """Earliest release of ``spec`` strictly after ``now_ms``."""
    if spec.release > now_ms:
        return spec.release
    elapsed = now_ms - spec.release
    return spec.release + (elapsed // spec.period + 1) * spec.period


def dms_to_genotype(trace: ExecutionTrace, scenario: Scenario) -> Tuple[int, ...]:
    """Convert a DMS trace into a genotype that decodes to the same trace.

    Genes are the executed non-beacon node sequence in slot order. Idle slots
    cannot be expressed in the gene alphabet; each contributes one filler gene
    appended after the executed sequence (the node with the earliest next
    release at that idle slot's time, ties to the lowest id). During decoding
    the cursor stalls at every slot the source trace idled in, because no node
    is runnable there, so the filler genes are never consumed early and the
    decoded trace reproduces the source exactly.
    """
    if len(trace.slots) != scenario.num_slots:
        raise ValueError(
            f"trace has {len(trace.slots)} slots, scenario expects "
            f"{scenario.num_slots}"
        )
    if scenario.n_nodes == 0:
        if any(entry == IDLE for entry in trace.slots):
            raise ValueError("cannot build a genotype without nodes")
        return ()
    executed = []
    fillers = []
    for index, entry in enumerate(trace.slots):
        if entry == BEACON:
            continue
        if entry == IDLE:
            now_ms = index * scenario.slot_duration
            filler = min(
                scenario.nodes,
                key=lambda spec: (_next_release(spec, now_ms), spec.node_id),
            )
            fillers.append(filler.node_id)
        else:
            executed.append(entry)
    return check_genotype(executed + fillers, scenario)


class _ReplayScheduler(BaseScheduler):
    _kind = ""

    def fit(self, scenario: Scenario) -> "_ReplayScheduler":
        check_scenario(scenario)
        self.trace_ = simulate_priority(scenario, self._kind)
        self.report_ = defect_time(self.trace_, scenario)
        return self


class DmsScheduler(_ReplayScheduler):
    """Deadline-monotonic scheduler (static priorities).

    Replayable even on scenarios that violate computation <= deadline; the
    report then exposes the damage.
    """

    _kind = DMS


class EdfScheduler(_ReplayScheduler):
    """Earliest-deadline-first scheduler (dynamic priorities)."""

    _kind = EDF
