"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the numpy
implementation is used. Setting ``PAULI_COHERENT_PURE=1`` forces the
fallback.
"""
import os

from . import _kernels_py

if os.environ.get("PAULI_COHERENT_PURE", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels_c as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
        BACKEND = "python"

channel_matrices = _impl.channel_matrices
nn_forward = _impl.nn_forward


def available_backends():
    """Map of backend name to module, for parity tests and benchmarks."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels_c
    except ImportError:
        pass
    else:
        out["cython"] = _kernels_c
    return out
