"""Genetic algorithm: operator units, termination, seeding, and the
DMS-seeded variant."""

import numpy as np
import pytest
from sklearn.base import clone

from conftest import build_scenario
from sfsched import (
    DmsScheduler,
    GaScheduler,
    MgaScheduler,
    UnschedulableScenarioError,
    check_genotype,
    table1_scenario,
)
from sfsched.ga import _mutate, multi_point, single_point, uniform


# --- crossover operators ----------------------------------------------------

def test_single_point_swaps_tails():
    a = np.array([1, 1, 1, 1])
    b = np.array([2, 2, 2, 2])
    c1, c2 = single_point(a, b, 2)
    assert c1.tolist() == [1, 1, 2, 2]
    assert c2.tolist() == [2, 2, 1, 1]


def test_single_point_edge_cuts_reproduce_the_parents():
    a = np.array([1, 2, 3])
    b = np.array([4, 5, 6])
    for cut in (0, 3):
        c1, c2 = single_point(a, b, cut)
        assert {tuple(c1), tuple(c2)} == {tuple(a), tuple(b)}


def test_multi_point_alternates_segments():
    a = np.array([1, 1, 1, 1, 1])
    b = np.array([2, 2, 2, 2, 2])
    c1, c2 = multi_point(a, b, [1, 3])
    assert c1.tolist() == [1, 2, 2, 1, 1]
    assert c2.tolist() == [2, 1, 1, 2, 2]


def test_multi_point_single_cut_equals_single_point():
    a = np.array([1, 1, 1, 1])
    b = np.array([2, 2, 2, 2])
    m1, m2 = multi_point(a, b, [2])
    s1, s2 = single_point(a, b, 2)
    assert m1.tolist() == s1.tolist()
    assert m2.tolist() == s2.tolist()


def test_multi_point_odd_cut_count_swaps_trailing_segment():
    a = np.array([1, 1, 1, 1, 1, 1])
    b = np.array([2, 2, 2, 2, 2, 2])
    c1, _ = multi_point(a, b, [1, 3, 4])
    assert c1.tolist() == [1, 2, 2, 1, 2, 2]


def test_uniform_swaps_where_mask_is_true():
    a = np.array([1, 1, 1, 1])
    b = np.array([2, 2, 2, 2])
    mask = np.array([True, False, True, False])
    c1, c2 = uniform(a, b, mask)
    assert c1.tolist() == [2, 1, 2, 1]
    assert c2.tolist() == [1, 2, 1, 2]


def test_crossover_children_preserve_parent_genes():
    rng = np.random.default_rng(3)
    a = rng.integers(1, 5, size=12)
    b = rng.integers(1, 5, size=12)
    for cut in range(1, 12):
        c1, c2 = single_point(a, b, cut)
        assert np.all(np.sort(np.concatenate([c1, c2]))
                      == np.sort(np.concatenate([a, b])))


# --- mutation ---------------------------------------------------------------

def test_mutation_rate_zero_is_identity():
    rng = np.random.default_rng(0)
    pool = np.arange(1, 7).reshape(2, 3)
    before = pool.copy()
    assert np.array_equal(_mutate(rng, pool, 0.0, 6, "reset"), before)


def test_mutation_stays_in_gene_range():
    rng = np.random.default_rng(1)
    for method in ("reset", "creep"):
        pool = np.ones((50, 40), dtype=np.int64) * 3
        out = _mutate(rng, pool, 1.0, 5, method)
        assert out.min() >= 1
        assert out.max() <= 5


def test_full_reset_mutation_changes_the_expected_fraction():
    # replacement draws uniformly over [1, n], so 1/n of hits keep their value
    rng = np.random.default_rng(7)
    n = 5
    pool = np.ones((100, 100), dtype=np.int64)
    out = _mutate(rng, pool.copy(), 1.0, n, "reset")
    changed = np.mean(out != 1)
    expected = 1.0 - 1.0 / n
    sigma = np.sqrt(expected * (1 - expected) / pool.size)
    assert abs(changed - expected) < 4 * sigma


def test_single_node_alphabet_is_mutation_proof():
    rng = np.random.default_rng(2)
    pool = np.ones((10, 10), dtype=np.int64)
    for method in ("reset", "creep"):
        assert np.all(_mutate(rng, pool.copy(), 1.0, 1, method) == 1)


# --- parameter validation ----------------------------------------------------

@pytest.mark.parametrize(
    "params",
    [
        {"population_size": 0},
        {"offspring_fraction": 0.0},
        {"offspring_fraction": 1.0},
        {"offspring_fraction": 0.999, "population_size": 10},  # no survivors
        {"selection": "roulette"},
        {"tournament_k": 0},
        {"crossover": "cycle"},
        {"crossover_points": 0},
        {"crossover_rate": 1.5},
        {"mutation": "swap"},
        {"mutation_rate": -0.1},
        {"max_generations": -1},
        {"stall_generations": 0},
    ],
)
def test_invalid_params_raise(toy1, params):
    with pytest.raises(ValueError):
        GaScheduler(**params).fit(toy1)


def test_unschedulable_scenario_is_rejected():
    scenario = build_scenario(5, (0, 10, 10, 50), [(0, 30, 20, 50)])
    for cls in (GaScheduler, MgaScheduler):
        with pytest.raises(UnschedulableScenarioError):
            cls(max_generations=1).fit(scenario)
    # replay still works on the same scenario
    assert DmsScheduler().fit(scenario).report_.defect_time >= 0


# --- run behaviour -----------------------------------------------------------

def test_same_seed_same_run(toy2):
    a = GaScheduler(population_size=20, max_generations=30, seed=5).fit(toy2)
    b = GaScheduler(population_size=20, max_generations=30, seed=5).fit(toy2)
    assert a.best_genotype_ == b.best_genotype_
    assert a.history_ == b.history_
    assert a.report_ == b.report_


def test_different_seeds_explore_differently(toy2):
    runs = {
        GaScheduler(population_size=20, max_generations=30, seed=s)
        .fit(toy2).history_
        for s in range(6)
    }
    assert len(runs) > 1


def test_fitted_attributes(toy1):
    ga = GaScheduler(population_size=10, max_generations=15, seed=0).fit(toy1)
    assert len(ga.history_) == ga.n_iter_ + 1
    assert ga.report_.fitness == max(ga.history_)
    check_genotype(ga.best_genotype_, toy1)
    assert ga.trace_.slots[0] == 0  # beacon opens the horizon
    assert ga.score() == ga.report_.fitness


def test_max_generations_caps_the_run(toy1):
    ga = GaScheduler(population_size=8, max_generations=3,
                     stall_generations=100, seed=1).fit(toy1)
    assert ga.n_iter_ == 3


def test_stall_stops_a_frozen_population(toy1):
    # no crossover and no mutation: nothing can ever improve, so the run
    # stops exactly stall_generations after the last (initial) improvement
    ga = GaScheduler(population_size=8, max_generations=1000,
                     stall_generations=5, crossover_rate=0.0,
                     mutation_rate=0.0, seed=1).fit(toy1)
    assert ga.n_iter_ == 5


def test_best_fitness_never_degrades(toy3):
    ga = GaScheduler(population_size=15, max_generations=40,
                     mutation_rate=0.1, seed=9).fit(toy3)
    running = np.maximum.accumulate(ga.history_)
    assert ga.report_.fitness == running[-1]
    assert ga.report_.fitness >= ga.history_[0]


def test_truncate_selection_with_frozen_operators_preserves_best(toy2):
    ga = GaScheduler(population_size=10, max_generations=10,
                     selection="truncate", crossover_rate=0.0,
                     mutation_rate=0.0, stall_generations=100, seed=3).fit(toy2)
    assert all(f == ga.history_[0] for f in ga.history_)


def test_ga_finds_toy_optimum(toy1):
    ga = GaScheduler(population_size=50, max_generations=200,
                     mutation_rate=0.2, selection="truncate",
                     offspring_fraction=0.8, crossover="uniform",
                     crossover_rate=0.8, seed=100).fit(toy1)
    assert ga.report_.defect_time == 0


def test_all_crossover_methods_run(toy2):
    for method in ("single_point", "multi_point", "uniform"):
        ga = GaScheduler(population_size=12, max_generations=10,
                         crossover=method, crossover_rate=0.9,
                         seed=4).fit(toy2)
        check_genotype(ga.best_genotype_, toy2)


def test_creep_mutation_runs(toy2):
    ga = GaScheduler(population_size=12, max_generations=10,
                     mutation="creep", mutation_rate=0.2, seed=4).fit(toy2)
    check_genotype(ga.best_genotype_, toy2)


def test_estimator_params_round_trip():
    ga = GaScheduler(population_size=7, mutation_rate=0.25, seed=11)
    params = ga.get_params()
    assert params["population_size"] == 7
    assert params["mutation_rate"] == 0.25
    twin = GaScheduler(**params)
    assert twin.get_params() == params
    assert clone(ga).get_params() == params


# --- the DMS-seeded variant ---------------------------------------------------

def test_mga_first_generation_at_least_ga(table1_100):
    for seed in range(5):
        ga = GaScheduler(population_size=20, max_generations=1, seed=seed)
        mga = MgaScheduler(population_size=20, max_generations=1, seed=seed)
        ga.fit(table1_100)
        mga.fit(table1_100)
        assert mga.history_[0] >= ga.history_[0], seed


def test_mga_never_worse_than_dms(table1_100):
    dms_defect = DmsScheduler().fit(table1_100).report_.defect_time
    for seed in (0, 7, 23):
        mga = MgaScheduler(population_size=20, max_generations=25,
                           seed=seed).fit(table1_100)
        assert mga.report_.defect_time <= dms_defect


def test_both_variants_rerun_bit_stable(toy3):
    for cls in (GaScheduler, MgaScheduler):
        a = cls(population_size=10, max_generations=20, seed=42).fit(toy3)
        b = cls(population_size=10, max_generations=20, seed=42).fit(toy3)
        assert a.history_ == b.history_
        assert a.best_genotype_ == b.best_genotype_


def test_mga_initial_population_contains_the_baseline(table1_100):
    # generation 0 holds the converted baseline, so its best is at least as
    # fit as the baseline even before any search happens
    mga = MgaScheduler(population_size=5, max_generations=1,
                       selection="truncate", crossover_rate=0.0,
                       mutation_rate=0.0, offspring_fraction=0.2,
                       seed=0).fit(table1_100)
    dms_fitness = DmsScheduler().fit(table1_100).report_.fitness
    assert mga.history_[0] >= dms_fitness
