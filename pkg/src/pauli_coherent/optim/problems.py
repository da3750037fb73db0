"""Fitness definitions the optimizers maximize.

A problem is anything with ``init(rng) -> chromosome`` and
``evaluate(chromosome) -> float``. Evaluation must be pure: the optimizers
may evaluate a generation in any order, or in parallel.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..ansatz import AnsatzSpec, parse_ansatz
from ..channel import ProbVec4
from ..coherent import coherent_information_amps
from ..errors import ConfigError, DegenerateState


@dataclass
class FitnessSpec:
    """Coherent information of a decoded ansatz state under ``shots`` channel uses.

    Degenerate decodes score ``sentinel``, which defaults to ``-(shots + 1)``.
    """

    p: ProbVec4
    shots: int
    ansatz: AnsatzSpec | str
    sentinel: float | None = None
    encoding: str = "01"

    def __post_init__(self):
        if self.shots < 1:
            raise ConfigError("shots must be >= 1")
        if isinstance(self.ansatz, str):
            self.ansatz = parse_ansatz(self.ansatz, self.shots, self.encoding)
        if self.ansatz.n_shots != self.shots:
            raise ConfigError("ansatz was built for a different number of channel uses")
        if self.sentinel is None:
            self.sentinel = -(self.shots + 1.0)
        if not self.sentinel < -self.shots:
            raise ConfigError(f"sentinel {self.sentinel} must be below -{self.shots}")

    def init(self, rng: np.random.Generator) -> list[np.ndarray]:
        return self.ansatz.init(rng)

    def evaluate(self, ch: list[np.ndarray]) -> float:
        try:
            psi = self.ansatz.decode(ch)
        except DegenerateState:
            return float(self.sentinel)
        return coherent_information_amps(psi.matrix, self.p, self.shots)

    def rate(self, fitness: float) -> float:
        return fitness / self.shots


@dataclass
class ToyProblem:
    """Negative squared distance to a fixed target; the optimum is 0."""

    target: list[np.ndarray]
    init_scale: float = 1.0
    evaluations: int = field(default=0, repr=False)

    @classmethod
    def random(cls, shapes, seed: int = 0, scale: float = 1.0) -> "ToyProblem":
        rng = np.random.default_rng(seed)
        return cls([rng.uniform(-scale, scale, s) for s in shapes], init_scale=scale)

    def init(self, rng: np.random.Generator) -> list[np.ndarray]:
        return [rng.uniform(-2 * self.init_scale, 2 * self.init_scale, t.shape) for t in self.target]

    def evaluate(self, ch: list[np.ndarray]) -> float:
        self.evaluations += 1
        return -float(sum(np.sum((a - t) ** 2) for a, t in zip(ch, self.target)))
