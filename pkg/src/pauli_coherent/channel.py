"""Qubit Pauli channels and their n-fold parallel action on purified inputs."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import DimError, InvalidDistribution
from .linalg import DensityOp, PureState, shannon_entropy

__all__ = [
    "PAULIS",
    "ProbVec4",
    "PauliTables",
    "pauli_tables",
    "apply_pauli_string",
    "channel_on_purified",
    "one_shot_capacity_raw",
    "one_shot_capacity",
]

PAULIS = (
    np.eye(2, dtype=np.complex128),
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)

SUM_TOL = 1e-9


@dataclass(frozen=True)
class ProbVec4:
    """Pauli error probabilities ``(p0, p1, p2, p3)`` for I, X, Y, Z."""

    p0: float
    p1: float
    p2: float
    p3: float

    def __post_init__(self):
        vals = self.as_array()
        if not np.all(np.isfinite(vals)) or vals.min() < 0.0:
            raise InvalidDistribution(f"probabilities must be non-negative, got {tuple(vals)}")
        if abs(vals.sum() - 1.0) > SUM_TOL:
            raise InvalidDistribution(f"probabilities sum to {vals.sum()!r}, not 1")

    @classmethod
    def from_errors(cls, p1: float, p2: float, p3: float) -> "ProbVec4":
        """Build from the three error probabilities; ``p0`` is derived last."""
        p1, p2, p3 = float(p1), float(p2), float(p3)
        p0 = 1.0 - p1 - p2 - p3
        if -1e-12 < p0 < 0.0:
            p0 = 0.0
        return cls(p0, p1, p2, p3)

    @property
    def errors(self) -> tuple[float, float, float]:
        return (self.p1, self.p2, self.p3)

    def as_array(self) -> np.ndarray:
        return np.array([self.p0, self.p1, self.p2, self.p3], dtype=float)

    def permuted(self, order: tuple[int, int, int]) -> "ProbVec4":
        """Reorder the error probabilities; ``order`` indexes into (p1, p2, p3)."""
        e = self.errors
        return ProbVec4(self.p0, e[order[0]], e[order[1]], e[order[2]])


@dataclass(frozen=True)
class PauliTables:
    """Precomputed index/phase action of every n-qubit Pauli string.

    Qubit 0 is the most significant bit of the S index. Row ``k`` maps an
    output index ``s`` to its source ``src[k, s]`` with factor ``phase[k, s]``.
    """

    n: int
    strings: np.ndarray  # (4**n, n) int
    src: np.ndarray  # (4**n, 2**n) int64
    phase: np.ndarray  # (4**n, 2**n) complex128

    def weights(self, p: ProbVec4) -> np.ndarray:
        probs = p.as_array()
        return np.prod(probs[self.strings], axis=1)


@lru_cache(maxsize=None)
def pauli_tables(n: int) -> PauliTables:
    if n < 1:
        raise DimError("shot count must be >= 1")
    dim = 2**n
    strings = np.array(list(itertools.product(range(4), repeat=n)), dtype=np.int64)
    outs = np.arange(dim, dtype=np.int64)
    src = np.empty((len(strings), dim), dtype=np.int64)
    phase = np.empty((len(strings), dim), dtype=np.complex128)
    for k, s in enumerate(strings):
        xmask = zmask = 0
        n_y = 0
        for q, a in enumerate(s):
            bit = 1 << (n - 1 - q)
            if a in (1, 2):
                xmask |= bit
            if a in (2, 3):
                zmask |= bit
            n_y += a == 2
        src[k] = outs ^ xmask
        parity = np.array([bin(int(v) & zmask).count("1") & 1 for v in src[k]])
        phase[k] = (1j**n_y) * np.where(parity, -1.0, 1.0)
    for arr in (strings, src, phase):
        arr.setflags(write=False)
    return PauliTables(n, strings, src, phase)


def _shots_of(psi: PureState) -> int:
    n = int(round(np.log2(psi.dim_s)))
    if 2**n != psi.dim_s:
        raise DimError(f"dim_s = {psi.dim_s} is not a power of two")
    return n


def apply_pauli_string(psi: PureState, s) -> PureState:
    """Apply ``sigma_{s_1} (x) ... (x) sigma_{s_n} (x) I_R`` to ``psi``."""
    s = tuple(int(a) for a in s)
    n = len(s)
    if psi.dim_s != 2**n:
        raise DimError(f"string of length {n} cannot act on dim_s = {psi.dim_s}")
    if any(a not in (0, 1, 2, 3) for a in s):
        raise ValueError(f"Pauli indices must be in 0..3, got {s}")
    tables = pauli_tables(n)
    k = int(np.dot(s, 4 ** np.arange(n - 1, -1, -1)))
    out = tables.phase[k][:, None] * psi.matrix[tables.src[k]]
    return PureState(out.reshape(-1), psi.dim_s, psi.dim_r)


@lru_cache(maxsize=256)
def _string_factors(n: int, p: ProbVec4):
    tables = pauli_tables(n)
    w = tables.weights(p)
    keep = w > 0.0
    out = (
        np.ascontiguousarray(tables.src[keep]),
        np.ascontiguousarray(tables.phase[keep]),
        np.sqrt(w[keep]),
    )
    for arr in out:
        arr.setflags(write=False)
    return out


def channel_on_purified(psi: PureState, p: ProbVec4, n: int | None = None) -> DensityOp:
    """``(Lambda^{(x)n} (x) I_R)(|psi><psi|)`` as a dense operator on S (x) R."""
    if not isinstance(p, ProbVec4):
        raise InvalidDistribution("channel must be given as a ProbVec4")
    if n is None:
        n = _shots_of(psi)
    if psi.dim_s != 2**n:
        raise DimError(f"dim_s = {psi.dim_s} does not match n = {n}")
    src, phase, sqrtw = _string_factors(n, p)
    imgs = (sqrtw[:, None] * phase)[:, :, None] * psi.matrix[src]
    flat = imgs.reshape(len(sqrtw), -1)
    return DensityOp(flat.T @ flat.conj())


def output_matrices(amps2d: np.ndarray, p: ProbVec4, n: int):
    """``(rho_S, joint)`` Hermitian pair used by the coherent-information fast path."""
    src, phase, sqrtw = _string_factors(n, p)
    return kernels.channel_matrices(amps2d, src, phase, sqrtw)


def one_shot_capacity_raw(p: ProbVec4) -> float:
    """``1 - H(p)`` in bits; negative for very noisy channels."""
    return 1.0 - shannon_entropy(p.as_array())


def one_shot_capacity(p: ProbVec4) -> float:
    """The one-shot quantum capacity, ``max(1 - H(p), 0)``."""
    return max(one_shot_capacity_raw(p), 0.0)
