"""Dense complex linear algebra and entropy primitives.

Everything here works on plain ``numpy`` complex arrays. The sizes involved
are small (at most 2**7 on a side), so LAPACK through ``numpy.linalg`` is
used for eigenvalues.

Index convention: a bipartite vector over S (x) R is stored S-major, i.e.
``amps[s * dim_r + r]``; the reference index varies fastest.

All entropies are in bits.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimError, InvalidDistribution, InvalidState, NotHermitian, NotPSD

__all__ = [
    "PureState",
    "DensityOp",
    "kron",
    "outer",
    "partial_trace_R",
    "hermitian_eigenvalues",
    "entropy_from_eigenvalues",
    "von_neumann_entropy",
    "shannon_entropy",
]

NORM_TOL = 1e-8
HERMITIAN_TOL = 1e-8
PSD_TOL = 1e-8
DIST_NEG_TOL = 1e-12
DIST_SUM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class PureState:
    """A pure state on S (x) R, stored S-major.

    The constructor checks shapes and finiteness only; normalization is the
    responsibility of whoever builds the amplitudes (all decoders and code
    constructors in this package normalize).
    """

    amps: np.ndarray
    dim_s: int
    dim_r: int = 1

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amps, dtype=np.complex128).reshape(-1)
        if self.dim_s < 1 or self.dim_r < 1:
            raise DimError(f"dimensions must be positive, got {self.dim_s}x{self.dim_r}")
        if amps.size != self.dim_s * self.dim_r:
            raise DimError(
                f"{amps.size} amplitudes do not match dim_s*dim_r = {self.dim_s * self.dim_r}"
            )
        if not np.all(np.isfinite(amps)):
            raise InvalidState("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return self.dim_s * self.dim_r

    @property
    def matrix(self) -> np.ndarray:
        """Amplitudes as a ``dim_s x dim_r`` matrix."""
        return self.amps.reshape(self.dim_s, self.dim_r)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "PureState":
        nrm = self.norm()
        if nrm == 0.0:
            raise InvalidState("cannot normalize the zero vector")
        return PureState(self.amps / nrm, self.dim_s, self.dim_r)

    def fidelity(self, other: "PureState") -> float:
        """|<self|other>|, insensitive to global phase."""
        if other.dim != self.dim:
            raise DimError("states live in different spaces")
        return float(abs(np.vdot(self.amps, other.amps)))


@dataclass(frozen=True, eq=False)
class DensityOp:
    """Thin wrapper marking a matrix as a density operator."""

    mat: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimError(f"density operator must be square, got shape {mat.shape}")
        object.__setattr__(self, "mat", mat)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def check(self, tol: float = 1e-10) -> None:
        """Raise unless Hermitian, unit-trace and PSD (eigenvalues >= -1e-8)."""
        if hermiticity_residual(self.mat) > tol:
            raise NotHermitian("density operator is not Hermitian")
        if abs(np.trace(self.mat).real - 1.0) > tol:
            raise InvalidState(f"trace {np.trace(self.mat).real!r} != 1")
        if hermitian_eigenvalues(self.mat)[0] < -PSD_TOL:
            raise NotPSD("density operator has a negative eigenvalue")


def _as_matrix(m) -> np.ndarray:
    if isinstance(m, DensityOp):
        return m.mat
    return np.asarray(m, dtype=np.complex128)


def hermiticity_residual(m) -> float:
    m = _as_matrix(m)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def kron(a, b) -> np.ndarray:
    """Kronecker product, ``(a (x) b)[i*rb + k, j*cb + l] = a[i, j] * b[k, l]``."""
    return np.kron(np.asarray(a), np.asarray(b))


def outer(psi: PureState) -> DensityOp:
    """Projector onto ``psi``."""
    if abs(psi.norm() - 1.0) > NORM_TOL:
        raise InvalidState(f"state norm {psi.norm()!r} deviates from 1")
    return DensityOp(np.outer(psi.amps, psi.amps.conj()))


def partial_trace_R(rho, dim_s: int, dim_r: int) -> DensityOp:
    """Trace out the reference factor of an S-major operator on S (x) R."""
    m = _as_matrix(rho)
    if m.shape != (dim_s * dim_r, dim_s * dim_r):
        raise DimError(f"matrix of shape {m.shape} is not ({dim_s}*{dim_r})-square")
    return DensityOp(np.einsum("irjr->ij", m.reshape(dim_s, dim_r, dim_s, dim_r)))


def hermitian_eigenvalues(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix in ascending order."""
    m = _as_matrix(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimError(f"expected a square matrix, got shape {m.shape}")
    if hermiticity_residual(m) > HERMITIAN_TOL:
        raise NotHermitian("matrix is not Hermitian within 1e-8")
    return np.linalg.eigvalsh(m)


def entropy_from_eigenvalues(evals: np.ndarray) -> float:
    """-sum(l * log2 l) with 0 log 0 = 0 and tiny negatives clamped."""
    evals = np.asarray(evals, dtype=float)
    if evals.size and evals.min() < -PSD_TOL:
        raise NotPSD(f"eigenvalue {evals.min()!r} below -1e-8")
    lam = evals[evals > 0.0]
    return float(-np.sum(lam * np.log2(lam)))


def von_neumann_entropy(rho) -> float:
    """Von Neumann entropy in bits."""
    return entropy_from_eigenvalues(hermitian_eigenvalues(rho))


def shannon_entropy(p) -> float:
    """Shannon entropy of a probability vector in bits."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise InvalidDistribution("distribution must be a non-empty vector")
    if not np.all(np.isfinite(p)) or p.min() < -DIST_NEG_TOL:
        raise InvalidDistribution(f"negative or non-finite probability in {p!r}")
    if abs(p.sum() - 1.0) > DIST_SUM_TOL:
        raise InvalidDistribution(f"probabilities sum to {p.sum()!r}")
    q = p[p > 0.0]
    return float(-np.sum(q * np.log2(q)))
