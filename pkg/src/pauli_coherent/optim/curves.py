"""Learning curves and multi-trial averaging."""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

CURVE_COLUMNS = ("generation", "mean_fitness", "gen_best", "best_so_far")


@dataclass
class LearningCurve:
    generation: list[int] = field(default_factory=list)
    mean_fitness: list[float] = field(default_factory=list)
    gen_best: list[float] = field(default_factory=list)
    best_so_far: list[float] = field(default_factory=list)

    def record(self, gen: int, fitnesses: np.ndarray, best_so_far: float) -> None:
        self.generation.append(int(gen))
        self.mean_fitness.append(float(np.mean(fitnesses)))
        self.gen_best.append(float(np.max(fitnesses)))
        self.best_so_far.append(float(best_so_far))

    def __len__(self) -> int:
        return len(self.generation)

    def as_array(self) -> np.ndarray:
        return np.column_stack([self.generation, self.mean_fitness, self.gen_best, self.best_so_far])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CURVE_COLUMNS)
        for row in zip(self.generation, self.mean_fitness, self.gen_best, self.best_so_far):
            w.writerow([row[0]] + [f"{v:.12g}" for v in row[1:]])
        return buf.getvalue()

    @classmethod
    def average(cls, curves: list["LearningCurve"]) -> "LearningCurve":
        """Pointwise mean of equally long curves."""
        if not curves:
            raise ValueError("nothing to average")
        if len({len(c) for c in curves}) != 1:
            raise ValueError("curves differ in length")
        stack = np.stack([c.as_array() for c in curves])
        mean = stack.mean(axis=0)
        return cls(
            [int(g) for g in curves[0].generation],
            mean[:, 1].tolist(),
            mean[:, 2].tolist(),
            mean[:, 3].tolist(),
        )


def _run_trial(args):
    algo, problem, cfg = args
    from .ga import ga_run
    from .pso import pso_run

    runner = {"ga": ga_run, "pso": pso_run}[algo]
    return runner(problem, cfg).curve


def bench_curves(problem, algo: str, cfg, n_trials: int, workers: int = 1) -> LearningCurve:
    """Average learning curve of ``n_trials`` runs seeded ``cfg.seed + i``."""
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    if algo not in ("ga", "pso"):
        raise ValueError(f"unknown algorithm {algo!r}")
    jobs = [(algo, problem, replace(cfg, seed=cfg.seed + i)) for i in range(n_trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            curves = list(ex.map(_run_trial, jobs))
    else:
        curves = [_run_trial(j) for j in jobs]
    return LearningCurve.average(curves)
