"""Shared fixtures: the fixed reference scenario at several horizon lengths
and a small hand-built family whose genotype spaces are exhaustively
enumerable."""

from __future__ import annotations

import pytest

from sfsched import Scenario, TaskSpec, check_scenario, table1_scenario


def build_scenario(num_slots, beacon, nodes, slot=10, seed=0):
    """Scenario from (release, computation, deadline, period) tuples."""
    return check_scenario(
        Scenario(
            slot_duration=slot,
            num_slots=num_slots,
            beacon=TaskSpec(0, *beacon),
            nodes=tuple(TaskSpec(i, *spec) for i, spec in enumerate(nodes, start=1)),
            seed=seed,
        )
    )


# Hand-built scenarios small enough to enumerate every genotype. toy1 has a
# 2^6 space, toy2 and toy3 have 3^8 spaces; all satisfy computation <= deadline.
TOYS = {
    "toy1": build_scenario(
        8, (0, 10, 20, 40), [(0, 20, 40, 40), (10, 10, 30, 40)]
    ),
    "toy2": build_scenario(
        9, (0, 10, 30, 90), [(0, 20, 40, 50), (0, 10, 30, 40), (10, 10, 40, 40)]
    ),
    "toy3": build_scenario(
        10, (0, 10, 20, 50), [(0, 30, 60, 100), (20, 20, 50, 50), (0, 10, 30, 50)]
    ),
}


@pytest.fixture
def table1_75():
    return table1_scenario(75)


@pytest.fixture
def table1_100():
    return table1_scenario(100)


@pytest.fixture
def table1_200():
    return table1_scenario(200)


@pytest.fixture
def toy1():
    return TOYS["toy1"]


@pytest.fixture
def toy2():
    return TOYS["toy2"]


@pytest.fixture
def toy3():
    return TOYS["toy3"]


@pytest.fixture(params=sorted(TOYS))
def toy(request):
    return TOYS[request.param]
