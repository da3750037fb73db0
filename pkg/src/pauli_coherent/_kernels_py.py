"""Pure-numpy implementations of the hot kernels.

This module is the reference backend; ``_kernels_c`` (Cython) must agree
with it to rounding error. Signatures are identical in both.
"""
import numpy as np


def channel_matrices(amps2d, src, phase, sqrtw):
    """Reduced output state and joint Gram matrix of a Pauli channel.

    ``amps2d`` is the ``dim_s x dim_r`` amplitude matrix. Row ``k`` of
    ``src``/``phase`` describes one Pauli string: its image of the state is
    ``phase[k, s] * amps2d[src[k, s], :]`` on output row ``s``. ``sqrtw``
    holds the square roots of the (non-zero) string weights.

    Returns ``(rho_s, joint)``: the channel output reduced to S, and a
    Hermitian matrix sharing its non-zero spectrum with the joint S (x) R
    output (the Gram matrix of the weighted images when that is smaller).
    """
    amps2d = np.asarray(amps2d, dtype=np.complex128)
    dim_s, dim_r = amps2d.shape
    n_k = src.shape[0]
    imgs = (sqrtw[:, None] * phase)[:, :, None] * amps2d[src]
    rho_s = np.einsum("kir,kjr->ij", imgs, imgs.conj())
    flat = imgs.reshape(n_k, dim_s * dim_r)
    if n_k < dim_s * dim_r:
        joint = flat.conj() @ flat.T
    else:
        joint = flat.T @ flat.conj()
    return rho_s, joint


def nn_forward(inputs, weights, biases):
    """Feed-forward pass: cos on the first hidden layer, tanh after, linear out."""
    h = np.asarray(inputs, dtype=np.float64)
    last = len(weights) - 1
    for i, (w, b) in enumerate(zip(weights, biases)):
        h = h @ w + b
        if i == last:
            break
        h = np.cos(h) if i == 0 else np.tanh(h)
    return h
