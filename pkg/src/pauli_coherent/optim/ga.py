"""Generational genetic algorithm over list-of-matrix chromosomes.

Each generation: size-``k`` tournament selection with replacement, 2-D block
crossover between matrices at the same chromosome position for adjacent
pairs, Gaussian mutation, then full replacement of the population. There is
no elitism; the best individual ever evaluated is tracked on the side.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, ShapeError
from .curves import LearningCurve


@dataclass
class GAConfig:
    population_size: int = 300
    generations: int = 300
    cx_prob: float = 0.5
    mut_prob: float = 0.2
    mut_attr_prob: float = 0.5
    mut_mean: float = 0.5
    mut_sigma: float = 0.25
    tournament_size: int = 3
    seed: int = 0

    def __post_init__(self):
        for name in ("cx_prob", "mut_prob", "mut_attr_prob"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1]")
        for name in ("population_size", "tournament_size"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1")
        if self.generations < 0:
            raise ConfigError("generations must be >= 0")
        if self.mut_sigma < 0:
            raise ConfigError("mut_sigma must be >= 0")


@dataclass
class OptimResult:
    best: list[np.ndarray]
    best_fitness: float
    curve: LearningCurve
    population: list[list[np.ndarray]] | None = None
    population_fitness: np.ndarray | None = None


def _interval(n: int, rng: np.random.Generator) -> tuple[int, int]:
    """Uniform draw from the n(n+1)/2 pairs ``lo <= hi`` in ``range(n)``."""
    k = int(rng.integers(n * (n + 1) // 2))
    # Pairs enumerated by hi: hi contributes hi + 1 pairs.
    hi = int((np.sqrt(8 * k + 1) - 1) // 2)
    while hi * (hi + 1) // 2 > k:
        hi -= 1
    while (hi + 1) * (hi + 2) // 2 <= k:
        hi += 1
    lo = k - hi * (hi + 1) // 2
    return lo, hi


def crossover_2d(a: np.ndarray, b: np.ndarray, rng: np.random.Generator):
    """Swap a random rectangular block between two equally shaped matrices.

    Returns new arrays; the inputs are left untouched.
    """
    a = np.array(a, dtype=float, copy=True)
    b = np.array(b, dtype=float, copy=True)
    if a.shape != b.shape or a.ndim != 2:
        raise ShapeError(f"cannot cross {a.shape} with {b.shape}")
    r1, r2 = _interval(a.shape[0], rng)
    c1, c2 = _interval(a.shape[1], rng)
    block = (slice(r1, r2 + 1), slice(c1, c2 + 1))
    tmp = a[block].copy()
    a[block] = b[block]
    b[block] = tmp
    return a, b


def mutate_gaussian(ch: list[np.ndarray], rng: np.random.Generator, indpb: float,
                    mean: float, sigma: float) -> list[np.ndarray]:
    out = []
    for a in ch:
        hit = rng.random(a.shape) < indpb
        noise = rng.normal(mean, sigma, a.shape)
        out.append(np.where(hit, a + noise, a))
    return out


def tournament_select(fitness: np.ndarray, n_select: int, size: int,
                      rng: np.random.Generator) -> np.ndarray:
    """Indices of tournament winners; ties go to the lowest population index."""
    n = len(fitness)
    aspirants = rng.integers(0, n, size=(n_select, size))
    f = fitness[aspirants]
    top = f.max(axis=1, keepdims=True)
    return np.where(f == top, aspirants, n).min(axis=1)


def _evaluate(problem, chroms, map_fn):
    return np.array(list(map_fn(problem.evaluate, chroms)), dtype=float)


def ga_run(problem, cfg: GAConfig, map_fn=map, keep_population: bool = False) -> OptimResult:
    """Maximize ``problem.evaluate`` with the generational GA.

    ``map_fn`` evaluates a list of chromosomes; any order-preserving map
    (e.g. ``Executor.map``) works because no randomness is drawn there.
    """
    rng = np.random.default_rng(cfg.seed)
    n = cfg.population_size
    pop = [problem.init(rng) for _ in range(n)]
    fit = _evaluate(problem, pop, map_fn)

    i_best = int(np.argmax(fit))
    best, best_fit = [a.copy() for a in pop[i_best]], float(fit[i_best])
    curve = LearningCurve()
    curve.record(0, fit, best_fit)

    for gen in range(1, cfg.generations + 1):
        chosen = tournament_select(fit, n, cfg.tournament_size, rng)
        off = [[a.copy() for a in pop[i]] for i in chosen]
        off_fit = fit[chosen].copy()
        stale = np.zeros(n, dtype=bool)

        for i in range(0, n - 1, 2):
            if rng.random() < cfg.cx_prob:
                for j in range(len(off[i])):
                    off[i][j], off[i + 1][j] = crossover_2d(off[i][j], off[i + 1][j], rng)
                stale[i] = stale[i + 1] = True
        for i in range(n):
            if rng.random() < cfg.mut_prob:
                off[i] = mutate_gaussian(off[i], rng, cfg.mut_attr_prob, cfg.mut_mean, cfg.mut_sigma)
                stale[i] = True

        idx = np.flatnonzero(stale)
        if idx.size:
            off_fit[idx] = _evaluate(problem, [off[i] for i in idx], map_fn)
        pop, fit = off, off_fit

        i_gen = int(np.argmax(fit))
        if fit[i_gen] > best_fit:
            best, best_fit = [a.copy() for a in pop[i_gen]], float(fit[i_gen])
        curve.record(gen, fit, best_fit)

    result = OptimResult(best, best_fit, curve)
    if keep_population:
        result.population, result.population_fitness = pop, fit
    return result
