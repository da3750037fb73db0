"""Parameterized state families and their chromosome layout.

Three families decode to a :class:`~pauli_coherent.linalg.PureState`:

* ``nn``: a feed-forward network mapping each computational-basis bit string
  to the real and imaginary part of its amplitude (cos on the first hidden
  layer, tanh on later hidden layers, linear output).
* ``raw``: the amplitudes themselves, interleaved ``re, im, re, im, ...``.
* ``schmidt``: ``sum_k c_k |s_k> (x) |r_k>`` with a ``k``-dimensional reference.

For the optimizers every parameter set is viewed as a *chromosome*: a list
of real 2-D arrays whose shapes stay fixed during a run. Crossover only ever
pairs entries at the same position of two chromosomes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import ConfigError, DegenerateState, ShapeError
from .linalg import PureState

__all__ = [
    "NNParams",
    "RawParams",
    "SchmidtParams",
    "AnsatzSpec",
    "parse_ansatz",
    "bit_inputs",
    "nn_decode",
    "raw_decode",
    "schmidt_decode",
    "chromosome_view",
    "chromosome_restore",
    "init_params",
]

DEGENERATE_NORM = 1e-12
ENCODINGS = ("01", "pm1")


@dataclass
class NNParams:
    layer_sizes: tuple[int, ...]
    weights: list[np.ndarray]  # weights[i] has shape (layer_sizes[i], layer_sizes[i+1])
    biases: list[np.ndarray]  # biases[i] has shape (layer_sizes[i+1],)

    def __post_init__(self):
        self.layer_sizes = tuple(int(s) for s in self.layer_sizes)
        if len(self.layer_sizes) < 2 or self.layer_sizes[-1] != 2:
            raise ShapeError(f"bad layer sizes {self.layer_sizes}; output layer must be 2")
        if len(self.weights) != len(self.layer_sizes) - 1 or len(self.biases) != len(self.weights):
            raise ShapeError("need one weight matrix and one bias vector per layer transition")
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            want = (self.layer_sizes[i], self.layer_sizes[i + 1])
            if np.shape(w) != want or np.shape(b) != (want[1],):
                raise ShapeError(f"layer {i}: got {np.shape(w)}/{np.shape(b)}, want {want}")


@dataclass
class RawParams:
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float).reshape(-1)


@dataclass
class SchmidtParams:
    coefficients: np.ndarray  # (k,)
    s_vectors: np.ndarray  # (k, 2**n) complex
    r_vectors: np.ndarray  # (k, k) complex

    @property
    def rank(self) -> int:
        return len(self.coefficients)


@lru_cache(maxsize=None)
def bit_inputs(n_qubits: int, encoding: str = "01") -> np.ndarray:
    """All bit strings of length ``n_qubits``, most significant qubit first."""
    if encoding not in ENCODINGS:
        raise ConfigError(f"unknown input encoding {encoding!r}")
    idx = np.arange(2**n_qubits)
    bits = (idx[:, None] >> np.arange(n_qubits - 1, -1, -1)) & 1
    out = bits.astype(float)
    if encoding == "pm1":
        out = 2.0 * out - 1.0
    out.setflags(write=False)
    return out


def _finish(amps: np.ndarray, dim_s: int, dim_r: int) -> PureState:
    norm = np.linalg.norm(amps)
    if not np.isfinite(norm) or norm < DEGENERATE_NORM:
        raise DegenerateState(f"decoded amplitude vector has norm {norm!r}")
    return PureState(amps / norm, dim_s, dim_r)


def _split(n_qubits: int, n_shots: int) -> tuple[int, int]:
    if not 1 <= n_shots <= n_qubits:
        raise ShapeError(f"cannot place {n_shots} system qubits among {n_qubits}")
    return 2**n_shots, 2 ** (n_qubits - n_shots)


def nn_decode(params: NNParams, n_qubits: int, n_shots: int | None = None,
              encoding: str = "01") -> PureState:
    """Evaluate the network on every basis string and normalize.

    The first ``n_shots`` qubits (default half of them) form S.
    """
    if params.layer_sizes[0] != n_qubits:
        raise ShapeError(f"network expects {params.layer_sizes[0]} inputs, not {n_qubits}")
    n_shots = n_qubits // 2 if n_shots is None else n_shots
    out = kernels.nn_forward(bit_inputs(n_qubits, encoding), params.weights, params.biases)
    return _finish(out[:, 0] + 1j * out[:, 1], *_split(n_qubits, n_shots))


def raw_decode(params: RawParams, n_qubits: int, n_shots: int | None = None) -> PureState:
    """Amplitude ``j`` is ``values[2j] + 1j * values[2j+1]``."""
    if params.values.size != 2 * 2**n_qubits:
        raise ShapeError(f"expected {2 * 2**n_qubits} values, got {params.values.size}")
    n_shots = n_qubits // 2 if n_shots is None else n_shots
    v = params.values
    return _finish(v[0::2] + 1j * v[1::2], *_split(n_qubits, n_shots))


def schmidt_decode(params: SchmidtParams, n: int) -> PureState:
    """``sum_k c_k |s_k> (x) |r_k>`` on ``2**n`` (x) ``k``."""
    k = params.rank
    s_vec = np.asarray(params.s_vectors, dtype=np.complex128)
    r_vec = np.asarray(params.r_vectors, dtype=np.complex128)
    if k < 1 or s_vec.shape != (k, 2**n) or r_vec.shape != (k, k):
        raise ShapeError(f"Schmidt parameters inconsistent with rank {k} and n = {n}")
    mat = np.einsum("k,ks,kr->sr", np.asarray(params.coefficients, dtype=float), s_vec, r_vec)
    return _finish(mat.reshape(-1), 2**n, k)


def _cplx_rows(v: np.ndarray) -> np.ndarray:
    return np.vstack([v.real, v.imag])


def chromosome_view(params) -> list[np.ndarray]:
    """Flatten parameters into a list of real 2-D arrays (copies)."""
    if isinstance(params, NNParams):
        out = []
        for w, b in zip(params.weights, params.biases):
            out.append(np.array(w, dtype=float))
            out.append(np.array(b, dtype=float).reshape(1, -1))
        return out
    if isinstance(params, RawParams):
        return [params.values.reshape(-1, 2).T.copy()]
    if isinstance(params, SchmidtParams):
        out = [np.asarray(params.coefficients, dtype=float).reshape(1, -1).copy()]
        out += [_cplx_rows(np.asarray(v)) for v in params.s_vectors]
        out += [_cplx_rows(np.asarray(v)) for v in params.r_vectors]
        return out
    raise TypeError(f"not an ansatz parameter set: {type(params).__name__}")


def chromosome_restore(ch: list[np.ndarray], template):
    """Inverse of :func:`chromosome_view`; shapes must match ``template``."""
    want = [a.shape for a in chromosome_view(template)]
    got = [np.shape(a) for a in ch]
    if want != got:
        raise ShapeError(f"chromosome shapes {got} do not match template {want}")
    if isinstance(template, NNParams):
        return NNParams(
            template.layer_sizes,
            [np.array(a, dtype=float) for a in ch[0::2]],
            [np.array(a, dtype=float).reshape(-1) for a in ch[1::2]],
        )
    if isinstance(template, RawParams):
        return RawParams(np.asarray(ch[0]).T.reshape(-1).copy())
    k = template.rank
    coeffs = np.array(ch[0][0], dtype=float)
    s_vec = np.array([a[0] + 1j * a[1] for a in ch[1 : 1 + k]])
    r_vec = np.array([a[0] + 1j * a[1] for a in ch[1 + k : 1 + 2 * k]])
    return SchmidtParams(coeffs, s_vec, r_vec)


@dataclass(frozen=True)
class AnsatzSpec:
    """What family of states an optimizer searches over, for ``n_shots`` channel uses.

    ``n_qubits`` counts S and R qubits together (nn/raw); ``rank`` is the
    Schmidt rank (schmidt). ``encoding`` picks the network input alphabet.
    """

    kind: str
    n_shots: int
    layer_sizes: tuple[int, ...] = ()
    n_qubits: int = 0
    rank: int = 0
    encoding: str = "01"
    descriptor: str = field(default="", compare=False)

    @property
    def dims(self) -> tuple[int, int]:
        if self.kind == "schmidt":
            return 2**self.n_shots, self.rank
        return _split(self.n_qubits, self.n_shots)

    def template(self):
        """Zero-filled parameters with the right shapes."""
        return init_params(self, None)

    def init(self, rng: np.random.Generator) -> list[np.ndarray]:
        return chromosome_view(init_params(self, rng))

    def decode(self, ch: list[np.ndarray]) -> PureState:
        """Chromosome straight to a normalized state (no shape checks)."""
        dim_s, dim_r = self.dims
        if self.kind == "nn":
            out = kernels.nn_forward(
                bit_inputs(self.n_qubits, self.encoding), ch[0::2], [b[0] for b in ch[1::2]]
            )
            return _finish(out[:, 0] + 1j * out[:, 1], dim_s, dim_r)
        if self.kind == "raw":
            return _finish(ch[0][0] + 1j * ch[0][1], dim_s, dim_r)
        k = self.rank
        coeffs = ch[0][0]
        s_vec = np.array([a[0] + 1j * a[1] for a in ch[1 : 1 + k]])
        r_vec = np.array([a[0] + 1j * a[1] for a in ch[1 + k : 1 + 2 * k]])
        mat = (coeffs[:, None] * s_vec).T @ r_vec
        return _finish(mat.reshape(-1), dim_s, dim_r)


def init_params(spec: AnsatzSpec, rng: np.random.Generator | None):
    """Random initial parameters; zeros when ``rng`` is None.

    NN weights and biases are standard normal; raw and Schmidt entries are
    uniform on [-1, 1].
    """
    if spec.kind == "nn":
        sizes = spec.layer_sizes
        shapes = [(sizes[i], sizes[i + 1]) for i in range(len(sizes) - 1)]
        if rng is None:
            ws = [np.zeros(s) for s in shapes]
            bs = [np.zeros(s[1]) for s in shapes]
        else:
            ws, bs = [], []
            for s in shapes:
                ws.append(rng.standard_normal(s))
                bs.append(rng.standard_normal(s[1]))
        return NNParams(sizes, ws, bs)

    def uni(shape):
        return np.zeros(shape) if rng is None else rng.uniform(-1.0, 1.0, shape)

    if spec.kind == "raw":
        return RawParams(uni(2 * 2**spec.n_qubits))
    k, dim = spec.rank, 2**spec.n_shots
    coeffs = uni(k)
    s_vec = uni((k, dim)) + 1j * uni((k, dim))
    r_vec = uni((k, k)) + 1j * uni((k, k))
    return SchmidtParams(coeffs, s_vec, r_vec)


def parse_ansatz(text: str, n_shots: int, encoding: str = "01") -> AnsatzSpec:
    """Parse ``nn:4x4x4x4x4x2``, ``raw``, ``raw:m=6`` or ``schmidt:k=2``."""
    t = text.strip().lower()
    if encoding not in ENCODINGS:
        raise ConfigError(f"unknown input encoding {encoding!r}")
    m = re.fullmatch(r"nn:(\d+(?:x\d+)+)", t)
    if m:
        sizes = tuple(int(s) for s in m.group(1).split("x"))
        if sizes[-1] != 2 or min(sizes) < 1:
            raise ConfigError(f"network must end in 2 outputs: {text!r}")
        if sizes[0] < n_shots:
            raise ConfigError(f"{sizes[0]} input qubits cannot hold {n_shots} system qubits")
        return AnsatzSpec("nn", n_shots, sizes, sizes[0], encoding=encoding, descriptor=text)
    m = re.fullmatch(r"raw(?::m=(\d+))?", t)
    if m:
        n_qubits = int(m.group(1)) if m.group(1) else 2 * n_shots
        if n_qubits < n_shots:
            raise ConfigError(f"raw ansatz needs at least {n_shots} qubits")
        return AnsatzSpec("raw", n_shots, n_qubits=n_qubits, descriptor=text)
    m = re.fullmatch(r"schmidt(?::k=(\d+))?", t)
    if m:
        rank = int(m.group(1)) if m.group(1) else 2
        if rank < 1:
            raise ConfigError("Schmidt rank must be >= 1")
        return AnsatzSpec("schmidt", n_shots, rank=rank, descriptor=text)
    raise ConfigError(f"cannot parse ansatz descriptor {text!r}")
