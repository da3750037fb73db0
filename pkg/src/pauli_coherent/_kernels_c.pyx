# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in ``_kernels_py``."""
import numpy as np

# Above this many multiply-adds the joint Gram matrix is left to BLAS.
cdef Py_ssize_t BLAS_CUTOFF = 65536
from libc.math cimport cos, tanh


def channel_matrices(amps2d, const long[:, ::1] src, const double complex[:, ::1] phase,
                     const double[::1] sqrtw):
    # Real/imaginary parts are kept apart: C complex multiplication goes
    # through __muldc3 and is several times slower.
    a_c = np.ascontiguousarray(amps2d, dtype=np.complex128)
    cdef const double[:, ::1] a_re = np.ascontiguousarray(a_c.real)
    cdef const double[:, ::1] a_im = np.ascontiguousarray(a_c.imag)
    cdef Py_ssize_t dim_s = a_re.shape[0], dim_r = a_re.shape[1]
    cdef Py_ssize_t n_k = src.shape[0], dim = dim_s * dim_r
    cdef Py_ssize_t k, l, s, t, r, i, j, ii, jj
    cdef double c_re, c_im, x_re, x_im, y_re, y_im, acc_re, acc_im

    re_arr = np.empty((n_k, dim), dtype=np.float64)
    im_arr = np.empty((n_k, dim), dtype=np.float64)
    cdef double[:, ::1] g_re = re_arr
    cdef double[:, ::1] g_im = im_arr
    for k in range(n_k):
        for s in range(dim_s):
            c_re = sqrtw[k] * phase[k, s].real
            c_im = sqrtw[k] * phase[k, s].imag
            t = src[k, s]
            for r in range(dim_r):
                x_re = a_re[t, r]
                x_im = a_im[t, r]
                g_re[k, s * dim_r + r] = c_re * x_re - c_im * x_im
                g_im[k, s * dim_r + r] = c_re * x_im + c_im * x_re

    rho_arr = np.empty((dim_s, dim_s), dtype=np.complex128)
    cdef double complex[:, ::1] rho = rho_arr
    for i in range(dim_s):
        for j in range(i, dim_s):
            acc_re = 0.0
            acc_im = 0.0
            for k in range(n_k):
                for r in range(dim_r):
                    ii = i * dim_r + r
                    jj = j * dim_r + r
                    acc_re = acc_re + g_re[k, ii] * g_re[k, jj] + g_im[k, ii] * g_im[k, jj]
                    acc_im = acc_im + g_im[k, ii] * g_re[k, jj] - g_re[k, ii] * g_im[k, jj]
            rho[i, j] = acc_re + 1j * acc_im
            rho[j, i] = acc_re - 1j * acc_im

    cdef double complex[:, ::1] out
    cdef Py_ssize_t m = n_k if n_k < dim else dim
    if m * m * (dim if n_k < dim else n_k) > BLAS_CUTOFF:
        imgs = re_arr + 1j * im_arr
        if n_k < dim:
            out_arr = imgs.conj() @ imgs.T
        else:
            out_arr = imgs.T @ imgs.conj()
    elif n_k < dim:
        # Gram matrix of the images: G[k, l] = <img_k | img_l>.
        out_arr = np.empty((n_k, n_k), dtype=np.complex128)
        out = out_arr
        for k in range(n_k):
            for l in range(k, n_k):
                acc_re = 0.0
                acc_im = 0.0
                for i in range(dim):
                    acc_re = acc_re + g_re[k, i] * g_re[l, i] + g_im[k, i] * g_im[l, i]
                    acc_im = acc_im + g_re[k, i] * g_im[l, i] - g_im[k, i] * g_re[l, i]
                out[k, l] = acc_re + 1j * acc_im
                out[l, k] = acc_re - 1j * acc_im
    else:
        tre = np.ascontiguousarray(re_arr.T)
        tim = np.ascontiguousarray(im_arr.T)
        g_re = tre
        g_im = tim
        out_arr = np.empty((dim, dim), dtype=np.complex128)
        out = out_arr
        for i in range(dim):
            for j in range(i, dim):
                acc_re = 0.0
                acc_im = 0.0
                for k in range(n_k):
                    acc_re = acc_re + g_re[i, k] * g_re[j, k] + g_im[i, k] * g_im[j, k]
                    acc_im = acc_im + g_im[i, k] * g_re[j, k] - g_re[i, k] * g_im[j, k]
                out[i, j] = acc_re + 1j * acc_im
                out[j, i] = acc_re - 1j * acc_im
    return rho_arr, out_arr


def nn_forward(inputs, weights, biases):
    cdef const double[:, ::1] h = np.ascontiguousarray(inputs, dtype=np.float64)
    cdef const double[:, ::1] w
    cdef const double[::1] b
    cdef double[:, ::1] out
    cdef Py_ssize_t n = h.shape[0], layer, last = len(weights) - 1
    cdef Py_ssize_t p, i, j, n_in, n_out
    cdef double acc
    for layer in range(last + 1):
        w = np.ascontiguousarray(weights[layer], dtype=np.float64)
        b = np.ascontiguousarray(biases[layer], dtype=np.float64).reshape(-1)
        n_in = w.shape[0]
        n_out = w.shape[1]
        out_arr = np.empty((n, n_out), dtype=np.float64)
        out = out_arr
        for p in range(n):
            for j in range(n_out):
                acc = b[j]
                for i in range(n_in):
                    acc = acc + h[p, i] * w[i, j]
                if layer == last:
                    out[p, j] = acc
                elif layer == 0:
                    out[p, j] = cos(acc)
                else:
                    out[p, j] = tanh(acc)
        h = out
    return np.asarray(h)
