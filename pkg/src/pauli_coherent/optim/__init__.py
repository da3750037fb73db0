"""Derivative-free optimizers: generational GA and particle swarm."""
from .curves import CURVE_COLUMNS, LearningCurve, bench_curves
from .ga import GAConfig, OptimResult, crossover_2d, ga_run, mutate_gaussian, tournament_select
from .problems import FitnessSpec, ToyProblem
from .pso import PSOConfig, pso_run

__all__ = [
    "CURVE_COLUMNS",
    "LearningCurve",
    "bench_curves",
    "GAConfig",
    "OptimResult",
    "crossover_2d",
    "ga_run",
    "mutate_gaussian",
    "tournament_select",
    "FitnessSpec",
    "ToyProblem",
    "PSOConfig",
    "pso_run",
]
