"""Basic particle swarm with per-component velocity clamping."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError
from .curves import LearningCurve
from .ga import OptimResult


@dataclass
class PSOConfig:
    n_particles: int = 100
    generations: int = 300
    alpha: float = 0.5
    beta: float = 0.5
    gamma: float = 0.5
    v_min: float = -1.0
    v_max: float = 1.0
    seed: int = 0
    global_best_mode: str = "history"

    def __post_init__(self):
        if self.n_particles < 1 or self.generations < 0:
            raise ConfigError("n_particles must be >= 1 and generations >= 0")
        if not self.v_min < self.v_max:
            raise ConfigError("v_min must be below v_max")
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise ConfigError("PSO coefficients must be non-negative")
        if self.global_best_mode not in ("history", "generation"):
            raise ConfigError("global_best_mode must be 'history' or 'generation'")


class _Layout:
    """Flattening between a chromosome (list of matrices) and one vector."""

    def __init__(self, template: list[np.ndarray]):
        self.shapes = [a.shape for a in template]
        self.sizes = [a.size for a in template]
        self.cuts = np.cumsum(self.sizes)[:-1]

    def flat(self, ch) -> np.ndarray:
        return np.concatenate([np.ravel(a) for a in ch])

    def unflat(self, x: np.ndarray) -> list[np.ndarray]:
        return [p.reshape(s).copy() for p, s in zip(np.split(x, self.cuts), self.shapes)]


def pso_run(problem, cfg: PSOConfig, map_fn=map, velocity_log: list | None = None) -> OptimResult:
    """Maximize ``problem.evaluate`` with a swarm of ``cfg.n_particles``.

    Every velocity component is clamped to ``[v_min, v_max]`` before the
    position update. The global attractor is the best position seen so far
    (``history``) or the best particle of the previous generation
    (``generation``). Velocities after each step are appended to
    ``velocity_log`` when one is given.
    """
    rng = np.random.default_rng(cfg.seed)
    first = [problem.init(rng) for _ in range(cfg.n_particles)]
    layout = _Layout(first[0])
    x = np.stack([layout.flat(c) for c in first])
    v = rng.uniform(cfg.v_min, cfg.v_max, x.shape)

    def evaluate(pos):
        return np.array(list(map_fn(problem.evaluate, [layout.unflat(r) for r in pos])), dtype=float)

    f = evaluate(x)
    x_pb, f_pb = x.copy(), f.copy()
    i = int(np.argmax(f))
    x_g, f_g = x[i].copy(), float(f[i])
    best, best_fit = x[i].copy(), float(f[i])
    curve = LearningCurve()
    curve.record(0, f, best_fit)

    for gen in range(1, cfg.generations + 1):
        r_b = rng.random(x.shape)
        r_g = rng.random(x.shape)
        v = cfg.alpha * v + cfg.beta * r_b * (x_pb - x) + cfg.gamma * r_g * (x_g - x)
        np.clip(v, cfg.v_min, cfg.v_max, out=v)
        x = x + v
        if velocity_log is not None:
            velocity_log.append(v.copy())
        f = evaluate(x)

        better = f > f_pb
        x_pb[better], f_pb[better] = x[better], f[better]
        i = int(np.argmax(f))
        if cfg.global_best_mode == "generation":
            x_g, f_g = x[i].copy(), float(f[i])
        elif f[i] > f_g:
            x_g, f_g = x[i].copy(), float(f[i])
        if f[i] > best_fit:
            best, best_fit = x[i].copy(), float(f[i])
        curve.record(gen, f, best_fit)

    return OptimResult(layout.unflat(best), best_fit, curve)
