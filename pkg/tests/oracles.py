"""Independent reference implementations used only by the tests.

Everything here is written the slow, obvious way (dense Kraus matrices,
explicit loops, arbitrary precision) so it shares no code path with the
package under test.
"""
import itertools
import math

import mpmath
import numpy as np

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
PAULI = (I2, X, Y, Z)


def kron_all(mats):
    out = np.eye(1, dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def dense_channel(amps, dim_s, dim_r, probs):
    """Sum_s w_s (K_s (x) I) |psi><psi| (K_s (x) I)^dagger with explicit matrices."""
    n = int(round(math.log2(dim_s)))
    rho = np.outer(amps, np.conj(amps)).astype(complex)
    out = np.zeros_like(rho)
    for s in itertools.product(range(4), repeat=n):
        w = np.prod([probs[a] for a in s])
        if w == 0:
            continue
        k = np.kron(kron_all([PAULI[a] for a in s]), np.eye(dim_r))
        out += w * k @ rho @ k.conj().T
    return out


def loop_partial_trace(rho, dim_s, dim_r):
    out = np.zeros((dim_s, dim_s), dtype=complex)
    for i in range(dim_s):
        for j in range(dim_s):
            for r in range(dim_r):
                out[i, j] += rho[i * dim_r + r, j * dim_r + r]
    return out


def entropy_bits(evals):
    return float(-sum(l * math.log2(l) for l in evals if l > 1e-15))


def mp_eigvalsh(m, dps=40):
    """Eigenvalues of a Hermitian matrix in high precision."""
    with mpmath.workdps(dps):
        a = mpmath.matrix(m.tolist())
        ev = mpmath.eighe(a, eigvals_only=True)
        return np.sort(np.array([float(mpmath.re(v)) for v in ev]))


def coherent_info_dense(amps, dim_s, dim_r, probs):
    rho = dense_channel(amps, dim_s, dim_r, probs)
    s_joint = entropy_bits(np.linalg.eigvalsh(rho))
    s_out = entropy_bits(np.linalg.eigvalsh(loop_partial_trace(rho, dim_s, dim_r)))
    return s_out - s_joint


def shannon_bits(p):
    return -sum(x * math.log2(x) for x in p if x > 0)


def nn_forward_scalar(bits, weights, biases):
    """Straight-line forward pass, one neuron at a time."""
    h = [float(b) for b in bits]
    n_layers = len(weights)
    for layer in range(n_layers):
        w, b = weights[layer], biases[layer]
        nxt = []
        for j in range(w.shape[1]):
            z = b[j]
            for i in range(w.shape[0]):
                z += h[i] * w[i, j]
            if layer == n_layers - 1:
                nxt.append(z)
            elif layer == 0:
                nxt.append(math.cos(z))
            else:
                nxt.append(math.tanh(z))
        h = nxt
    return h


def nn_state_scalar(weights, biases, n_qubits):
    amps = []
    for idx in range(2**n_qubits):
        bits = [(idx >> (n_qubits - 1 - q)) & 1 for q in range(n_qubits)]
        re, im = nn_forward_scalar(bits, weights, biases)
        amps.append(complex(re, im))
    amps = np.array(amps)
    return amps / np.linalg.norm(amps)


def random_channel(rng, cap=0.4):
    """(p0, p1, p2, p3) with each error probability <= cap."""
    while True:
        e = rng.uniform(0.0, cap, 3)
        if e.sum() <= 1.0:
            return np.array([1.0 - e.sum(), *e])


def random_state(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real
