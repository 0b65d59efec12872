"""Particle swarm over continuous positions that decode to genotypes.

The classic variant accelerates toward personal and global bests; the
orthogonal-learning variant steers each dimension toward either the personal
best or the global best, chosen by an orthogonal-experimental-design pass.

Reproducibility contract: one numpy default_rng(seed) drives a run. Draw
order is fixed: position init (one uniform call), then per iteration, in
particle order, the random coefficients (two scalars per particle for the
classic variant, one vector per particle for the orthogonal variant). The
guidance reconstruction is deterministic. Best updates happen at the
iteration barrier, in particle order, so parallel fitness evaluation cannot
change results. Same (scenario, params, seed) gives a bit-identical run.
"""

from __future__ import annotations

import math
from typing import List, Tuple

import numpy as np

from .base import BaseScheduler
from .evaluator import decode_and_simulate, defect_time, evaluate_genotype
from .model import Scenario, genotype_length
from .validation import check_schedulable, check_scenario


def decode_position(position: np.ndarray, n_nodes: int) -> Tuple[int, ...]:
    """Round each coordinate half away from zero, then clamp to [1, n]."""
    rounded = np.sign(position) * np.floor(np.abs(position) + 0.5)
    return tuple(int(v) for v in np.clip(rounded, 1, n_nodes))


def orthogonal_array(n_factors: int) -> np.ndarray:
    """Two-level orthogonal array with 2**ceil(log2(n_factors+1)) rows.

    Row i, factor j (1-based) carries level popcount(i AND j) mod 2; any two
    columns show each level pair equally often.
    """
    if n_factors < 1:
        raise ValueError("need at least one factor")
    rows = 1 << math.ceil(math.log2(n_factors + 1))
    array = np.zeros((rows, n_factors), dtype=np.int8)
    for i in range(rows):
        for idx in range(n_factors):
            array[i, idx] = bin(i & (idx + 1)).count("1") & 1
    return array


class _SwarmBase(BaseScheduler):
    def _check(self, scenario: Scenario, particles: int, iterations: int) -> None:
        check_scenario(scenario)
        check_schedulable(scenario)
        if scenario.n_nodes < 1:
            raise ValueError("need at least one node to optimize")
        if particles < 2:
            raise ValueError("particles must be >= 2")
        if iterations < 1:
            raise ValueError("max_iterations must be >= 1")

    def _finish(self, scenario, gbest_pos, history, iterations):
        self.best_position_ = gbest_pos.copy()
        self.best_genotype_ = decode_position(gbest_pos, scenario.n_nodes)
        self.trace_ = decode_and_simulate(scenario, self.best_genotype_)
        self.report_ = defect_time(self.trace_, scenario)
        self.history_ = tuple(history)
        self.n_iter_ = iterations
        return self


class PsoScheduler(_SwarmBase):
    """Inertia-decay particle swarm.

    Velocity update at iteration t of m:
    v = (1 - t/m) v + c1 r1 (pbest - x) + c2 r2 (gbest - x), with fresh
    scalar r1, r2 per particle per iteration; then x += v. Positions start
    uniform in [1, n] per coordinate with zero velocity and are unbounded
    afterwards; decoding clamps.
    """

    def __init__(self, particles: int = 50, max_iterations: int = 1000,
                 c1: float = 2.0, c2: float = 2.0, seed: int = 0):
        self.particles = particles
        self.max_iterations = max_iterations
        self.c1 = c1
        self.c2 = c2
        self.seed = seed

    def fit(self, scenario: Scenario) -> "PsoScheduler":
        self._check(scenario, self.particles, self.max_iterations)
        if self.c1 <= 0 or self.c2 <= 0:
            raise ValueError("acceleration constants must be positive")
        rng = np.random.default_rng(self.seed)
        n = scenario.n_nodes
        length = genotype_length(scenario)
        m = self.max_iterations

        pos = rng.uniform(1, n, size=(self.particles, length))
        vel = np.zeros_like(pos)
        fits = np.array(
            [evaluate_genotype(scenario, decode_position(p, n)).fitness for p in pos]
        )
        pbest_pos = pos.copy()
        pbest_fit = fits.copy()
        g = int(np.argmax(pbest_fit))
        gbest_pos = pbest_pos[g].copy()
        gbest_fit = float(pbest_fit[g])
        history: List[float] = [gbest_fit]

        for t in range(1, m + 1):
            w = 1.0 - t / m
            for i in range(self.particles):
                r1 = rng.random()
                r2 = rng.random()
                vel[i] = (w * vel[i]
                          + self.c1 * r1 * (pbest_pos[i] - pos[i])
                          + self.c2 * r2 * (gbest_pos - pos[i]))
                pos[i] = pos[i] + vel[i]
            for i in range(self.particles):
                f = evaluate_genotype(scenario, decode_position(pos[i], n)).fitness
                if f > pbest_fit[i]:
                    pbest_fit[i] = f
                    pbest_pos[i] = pos[i].copy()
            g = int(np.argmax(pbest_fit))
            if pbest_fit[g] > gbest_fit:
                gbest_fit = float(pbest_fit[g])
                gbest_pos = pbest_pos[g].copy()
            history.append(gbest_fit)
        return self._finish(scenario, gbest_pos, history, m)


class OlpsoScheduler(_SwarmBase):
    """Orthogonal-learning particle swarm (global-best neighborhood).

    Velocity update at iteration t of m:
    v = (1 - t/m) v + c r_d (guide - x), with a fresh uniform r_d per
    dimension per particle per iteration. guide takes each dimension live
    from the particle's personal best or from the global best, as chosen by
    the particle's guidance selector. The selector is rebuilt by an
    orthogonal-experimental-design pass (one fitness evaluation per array
    row, best mean level per factor, ties resolved from the best row)
    whenever the personal best has stagnated for reconstruction_gap
    iterations.
    """

    def __init__(self, particles: int = 50, max_iterations: int = 1000,
                 c: float = 2.0, reconstruction_gap: int = 5, seed: int = 0):
        self.particles = particles
        self.max_iterations = max_iterations
        self.c = c
        self.reconstruction_gap = reconstruction_gap
        self.seed = seed

    def _rebuild(self, scenario, pi_pos, pn_pos, oa):
        """Guidance selector per dimension: False -> personal, True -> global."""
        n = scenario.n_nodes
        fits = np.empty(len(oa))
        for r, row in enumerate(oa):
            candidate = np.where(row.astype(bool), pn_pos, pi_pos)
            fits[r] = evaluate_genotype(
                scenario, decode_position(candidate, n)
            ).fitness
        best_row = int(np.argmax(fits))
        selector = np.zeros(oa.shape[1], dtype=bool)
        for j in range(oa.shape[1]):
            level1 = oa[:, j] == 1
            mean1 = fits[level1].mean()
            mean0 = fits[~level1].mean()
            if mean1 > mean0:
                selector[j] = True
            elif mean1 == mean0:
                selector[j] = bool(oa[best_row, j])
        return selector

    def fit(self, scenario: Scenario) -> "OlpsoScheduler":
        self._check(scenario, self.particles, self.max_iterations)
        if self.c <= 0:
            raise ValueError("acceleration constant must be positive")
        if self.reconstruction_gap < 1:
            raise ValueError("reconstruction_gap must be >= 1")
        rng = np.random.default_rng(self.seed)
        n = scenario.n_nodes
        length = genotype_length(scenario)
        m = self.max_iterations
        oa = orthogonal_array(length)

        pos = rng.uniform(1, n, size=(self.particles, length))
        vel = np.zeros_like(pos)
        fits = np.array(
            [evaluate_genotype(scenario, decode_position(p, n)).fitness for p in pos]
        )
        pbest_pos = pos.copy()
        pbest_fit = fits.copy()
        g = int(np.argmax(pbest_fit))
        gbest_pos = pbest_pos[g].copy()
        gbest_fit = float(pbest_fit[g])
        history: List[float] = [gbest_fit]
        selectors = [
            self._rebuild(scenario, pbest_pos[i], gbest_pos, oa)
            for i in range(self.particles)
        ]
        stagnation = [0] * self.particles

        for t in range(1, m + 1):
            w = 1.0 - t / m
            for i in range(self.particles):
                r_d = rng.random(length)
                guide = np.where(selectors[i], gbest_pos, pbest_pos[i])
                vel[i] = w * vel[i] + self.c * r_d * (guide - pos[i])
                pos[i] = pos[i] + vel[i]
            for i in range(self.particles):
                f = evaluate_genotype(scenario, decode_position(pos[i], n)).fitness
                if f > pbest_fit[i]:
                    pbest_fit[i] = f
                    pbest_pos[i] = pos[i].copy()
                    stagnation[i] = 0
                else:
                    stagnation[i] += 1
            g = int(np.argmax(pbest_fit))
            if pbest_fit[g] > gbest_fit:
                gbest_fit = float(pbest_fit[g])
                gbest_pos = pbest_pos[g].copy()
            history.append(gbest_fit)
            for i in range(self.particles):
                if stagnation[i] >= self.reconstruction_gap:
                    selectors[i] = self._rebuild(scenario, pbest_pos[i],
                                                 gbest_pos, oa)
                    stagnation[i] = 0
        return self._finish(scenario, gbest_pos, history, m)
