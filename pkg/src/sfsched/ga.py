"""Generational genetic algorithm over genotypes, plus the DMS-seeded variant.

Reproducibility contract: one numpy default_rng(seed) drives a run. Draw
order is fixed: population init (one integers call), then per generation:
survivor selection, parent selection, parent-order shuffle, per-pair
crossover coin and operator draws in pair order, then the mutation mask and
replacement values. Same (scenario, params, seed) gives a bit-identical run.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from .base import BaseScheduler
from .baselines import dms_schedule, dms_to_genotype
from .evaluator import decode_and_simulate, defect_time, evaluate_genotype
from .model import Scenario, genotype_length
from .validation import check_schedulable, check_scenario


def _init_population(rng, pop_size: int, length: int, n: int) -> np.ndarray:
    return rng.integers(1, n + 1, size=(pop_size, length), dtype=np.int64)


def _select(rng, fits: np.ndarray, count: int, method: str, k: int) -> np.ndarray:
    """Indices of ``count`` selected individuals."""
    if method == "truncate":
        order = np.argsort(-fits, kind="stable")
        return order[:count]
    picks = np.empty(count, dtype=np.int64)
    for i in range(count):
        contenders = rng.integers(0, len(fits), size=k)
        picks[i] = contenders[int(np.argmax(fits[contenders]))]
    return picks


def single_point(a: np.ndarray, b: np.ndarray, cut: int) -> Tuple[np.ndarray, np.ndarray]:
    """Swap tails after ``cut``; boundary cuts reproduce the parent pair."""
    c1 = np.concatenate([a[:cut], b[cut:]])
    c2 = np.concatenate([b[:cut], a[cut:]])
    return c1, c2


def multi_point(a: np.ndarray, b: np.ndarray, cuts) -> Tuple[np.ndarray, np.ndarray]:
    """Alternate segments between sorted distinct cut positions."""
    c1 = a.copy()
    c2 = b.copy()
    bounds = list(cuts) + [len(a)]
    for idx in range(0, len(bounds) - 1, 2):
        lo, hi = bounds[idx], bounds[idx + 1]
        c1[lo:hi] = b[lo:hi]
        c2[lo:hi] = a[lo:hi]
    return c1, c2


def uniform(a: np.ndarray, b: np.ndarray, mask: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Per-gene swap where ``mask`` is True."""
    c1 = np.where(mask, b, a)
    c2 = np.where(mask, a, b)
    return c1, c2


def _crossover_pair(rng, a, b, method: str, points: int):
    length = len(a)
    if method == "single_point":
        if length < 2:
            return a.copy(), b.copy()
        cut = int(rng.integers(1, length))
        return single_point(a, b, cut)
    if method == "multi_point":
        m = min(points, length - 1)
        if m < 1:
            return a.copy(), b.copy()
        cuts = sorted(rng.choice(np.arange(1, length), size=m, replace=False).tolist())
        return multi_point(a, b, cuts)
    mask = rng.random(length) < 0.5
    return uniform(a, b, mask)


def _mutate(rng, pool: np.ndarray, rate: float, n: int, method: str) -> np.ndarray:
    """Per-gene mutation with probability ``rate``.

    reset: uniform replacement in [1, n]. creep: integer Gaussian step with
    sigma (n-1)/4, clamped to [1, n].
    """
    if rate <= 0.0 or pool.size == 0:
        return pool
    mask = rng.random(pool.shape) < rate
    hits = int(mask.sum())
    if hits == 0:
        return pool
    if method == "reset":
        pool[mask] = rng.integers(1, n + 1, size=hits)
    else:
        sigma = (n - 1) / 4.0
        stepped = np.rint(pool[mask] + rng.normal(0.0, sigma, size=hits))
        pool[mask] = np.clip(stepped, 1, n).astype(np.int64)
    return pool


class GaScheduler(BaseScheduler):
    """Generational GA: elitist survivors plus recombined, mutated offspring.

    Survivors (count N = round(population_size * (1 - offspring_fraction)))
    are selected and copied unchanged each generation; the parent pool is
    selected separately, shuffled, paired adjacently, recombined with
    probability crossover_rate and mutated per gene. Stops after
    max_generations, or earlier once the best fitness seen has not improved
    for stall_generations.
    """

    def __init__(
        self,
        population_size: int = 50,
        max_generations: int = 1000,
        stall_generations: int = 1000,
        selection: str = "tournament",
        tournament_k: int = 3,
        offspring_fraction: float = 0.4,
        crossover: str = "single_point",
        crossover_points: int = 2,
        crossover_rate: float = 0.2,
        mutation: str = "reset",
        mutation_rate: float = 0.001,
        seed: int = 0,
    ):
        self.population_size = population_size
        self.max_generations = max_generations
        self.stall_generations = stall_generations
        self.selection = selection
        self.tournament_k = tournament_k
        self.offspring_fraction = offspring_fraction
        self.crossover = crossover
        self.crossover_points = crossover_points
        self.crossover_rate = crossover_rate
        self.mutation = mutation
        self.mutation_rate = mutation_rate
        self.seed = seed

    _seed_with_baseline = False

    def _check_params(self, scenario: Scenario) -> None:
        check_scenario(scenario)
        check_schedulable(scenario)
        if scenario.n_nodes < 1:
            raise ValueError("need at least one node to optimize")
        if self.population_size < 1:
            raise ValueError("population_size must be >= 1")
        if not 0.0 < self.offspring_fraction < 1.0:
            raise ValueError("offspring_fraction must be in (0, 1)")
        if round(self.population_size * (1.0 - self.offspring_fraction)) < 1:
            raise ValueError("survivor count rounds to zero")
        if self.selection not in ("tournament", "truncate"):
            raise ValueError(f"unknown selection {self.selection!r}")
        if self.tournament_k < 1:
            raise ValueError("tournament_k must be >= 1")
        if self.crossover not in ("single_point", "multi_point", "uniform"):
            raise ValueError(f"unknown crossover {self.crossover!r}")
        if self.crossover_points < 1:
            raise ValueError("crossover_points must be >= 1")
        if not 0.0 <= self.crossover_rate <= 1.0:
            raise ValueError("crossover_rate must be in [0, 1]")
        if self.mutation not in ("reset", "creep"):
            raise ValueError(f"unknown mutation {self.mutation!r}")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must be in [0, 1]")
        if self.max_generations < 0 or self.stall_generations < 1:
            raise ValueError("generation budgets must be positive")

    def fit(self, scenario: Scenario) -> "GaScheduler":
        self._check_params(scenario)
        rng = np.random.default_rng(self.seed)
        length = genotype_length(scenario)
        n = scenario.n_nodes
        pop_size = self.population_size
        survivors = round(pop_size * (1.0 - self.offspring_fraction))
        n_offspring = pop_size - survivors

        population = _init_population(rng, pop_size, length, n)
        if self._seed_with_baseline:
            seeded = np.asarray(
                dms_to_genotype(dms_schedule(scenario), scenario), dtype=np.int64
            )
        fits = np.array(
            [evaluate_genotype(scenario, row.tolist()).fitness for row in population]
        )
        if self._seed_with_baseline:
            worst = int(np.argmin(fits))
            population[worst] = seeded
            fits[worst] = evaluate_genotype(scenario, seeded.tolist()).fitness

        best = int(np.argmax(fits))
        best_fit = float(fits[best])
        best_genes = population[best].copy()
        history: List[float] = [float(fits[best])]
        last_improved = 0
        generation = 0

        while (generation < self.max_generations
               and generation - last_improved < self.stall_generations):
            generation += 1
            surv_idx = _select(rng, fits, survivors, self.selection, self.tournament_k)
            parent_idx = _select(rng, fits, n_offspring, self.selection, self.tournament_k)
            surv = population[surv_idx].copy()
            surv_fits = fits[surv_idx].copy()

            parents = population[parent_idx][rng.permutation(n_offspring)]
            children = []
            for i in range(0, n_offspring - 1, 2):
                a, b = parents[i], parents[i + 1]
                if rng.random() < self.crossover_rate:
                    c1, c2 = _crossover_pair(rng, a, b, self.crossover,
                                             self.crossover_points)
                else:
                    c1, c2 = a.copy(), b.copy()
                children.extend((c1, c2))
            if n_offspring % 2:
                children.append(parents[-1].copy())
            if children:
                offspring = _mutate(rng, np.stack(children), self.mutation_rate,
                                    n, self.mutation)
                off_fits = np.array(
                    [evaluate_genotype(scenario, row.tolist()).fitness
                     for row in offspring]
                )
                population = np.concatenate([surv, offspring])
                fits = np.concatenate([surv_fits, off_fits])
            else:
                population, fits = surv, surv_fits

            gen_best = int(np.argmax(fits))
            history.append(float(fits[gen_best]))
            if fits[gen_best] > best_fit:
                best_fit = float(fits[gen_best])
                best_genes = population[gen_best].copy()
                last_improved = generation

        self.best_genotype_ = tuple(best_genes.tolist())
        self.trace_ = decode_and_simulate(scenario, self.best_genotype_)
        self.report_ = defect_time(self.trace_, scenario)
        self.history_ = tuple(history)
        self.n_iter_ = generation
        return self


class MgaScheduler(GaScheduler):
    """GA whose initial population is seeded with the converted DMS schedule.

    After the random initial population is evaluated, the worst individual is
    replaced by the genotype converted from the DMS trace; everything else is
    identical to GaScheduler, including the random draw order, so runs with a
    shared seed differ only through that replacement.
    """

    _seed_with_baseline = True
