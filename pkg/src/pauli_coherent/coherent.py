"""Coherent information of Pauli channels, numerically and in closed form.

The numeric route takes a state on S (x) R, pushes the S part through ``n``
parallel channel uses and takes the entropy difference. The closed-form routes are exact expressions for the Psi (two uses), Phi and
chi (three uses) codes, written as per-use rates in bits.

Closed forms accept numpy arrays for ``p0..p3`` so whole grids evaluate in
one call. A term ``A * log2(B)`` is taken as zero whenever ``A <= 0``.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .channel import ProbVec4, output_matrices
from .codes import VARIANTS, CodeId
from .errors import DimError
from .linalg import PureState, entropy_from_eigenvalues

__all__ = [
    "coherent_information",
    "coherent_information_amps",
    "code_rate",
    "q2_closed_psi",
    "q3_closed_phi",
    "q3_closed_chi",
    "closed_form_rate",
    "closed_form_grid",
    "best_family_rate",
    "CLOSED_FORM_SHOTS",
    "TIE_TOL",
    "SUPERADDITIVE_TOL",
]

TIE_TOL = 1e-12
SUPERADDITIVE_TOL = 1e-9


def coherent_information_amps(amps2d: np.ndarray, p: ProbVec4, n: int) -> float:
    """Coherent information of an amplitude matrix of shape ``(2**n, dim_r)``.

    No validation; this is the path the optimizers call in their inner loop.
    """
    rho_s, joint = output_matrices(amps2d, p, n)
    s_out = entropy_from_eigenvalues(np.linalg.eigvalsh(rho_s))
    s_joint = entropy_from_eigenvalues(np.linalg.eigvalsh(joint))
    return s_out - s_joint


def coherent_information(psi: PureState, p: ProbVec4, n: int) -> float:
    """``S(Tr_R rho') - S(rho')`` for ``rho'`` the n-use channel output of ``psi``."""
    if psi.dim_s != 2**n:
        raise DimError(f"dim_s = {psi.dim_s} does not match n = {n} channel uses")
    return coherent_information_amps(psi.matrix, p, n)


def code_rate(psi: PureState, p: ProbVec4, n: int) -> float:
    """Coherent information per channel use."""
    return coherent_information(psi, p, n) / n


def _xlog(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    pos = a > 0.0
    return np.where(pos, a * np.log2(np.where(pos, b, 1.0)), 0.0)


def _psi_I(p0, p1, p2, p3):
    L = _xlog
    s12, s03 = p1 + p2, p0 + p3
    half_sq = 0.5 * (s12**2 + s03**2)
    return (
        L(p1 * p2, 2 * p1 * p2)
        + L(p0 * p3, 2 * p0 * p3)
        + L(0.5 * (p1**2 + p2**2), p1**2 + p2**2)
        + L(0.5 * (p0**2 + p3**2), p0**2 + p3**2)
        - L(s12 * s03, s12 * s03)
        + L(p0 * p2 + p1 * p3, p0 * p2 + p1 * p3)
        + L(p0 * p1 + p2 * p3, p0 * p1 + p2 * p3)
        - L(0.5 * s03**2, half_sq)
        - L(0.5 * s12**2, half_sq)
    )


def _phi_I(p0, p1, p2, p3):
    L = _xlog
    s12, s03 = p1 + p2, p0 + p3
    mix = 1 - 3 * s12 * s03
    a = p0 * (p1**2 + p2**2) + 2 * p1 * p2 * p3
    b = 2 * p0 * p1 * p2 + (p1**2 + p2**2) * p3
    c = 2 * p0 * p2 * p3 + p1 * (p0**2 + p3**2)
    d = 2 * p0 * p1 * p3 + p2 * (p0**2 + p3**2)
    return (
        L(p2 * (3 * p1**2 + p2**2) / 3, p2**3 + 3 * p1**2 * p2)
        + L(p1 * (p1**2 + 3 * p2**2) / 3, p1**3 + 3 * p2**2 * p1)
        - L(s12 * s03, 0.5 * s12 * s03)
        + L(a, a)
        + L(b, b)
        + L(p3 * (3 * p0**2 + p3**2) / 3, p3**3 + 3 * p0**2 * p3)
        + L(p0 * (p0**2 + 3 * p3**2) / 3, p0**3 + 3 * p3**2 * p0)
        - L(mix / 3, 0.5 * mix)
        + L(c, c)
        + L(d, d)
    )


def _chi_I(p0, p1, p2, p3):
    L = _xlog
    s12, s03 = p1 + p2, p0 + p3
    u = p1**2 + p2**2
    v = p3**2 + p0**2
    m13 = p1 * p3 + p2 * p0
    m10 = p1 * p0 + p2 * p3
    total = (
        L(2 * p1**2 * p2, 2 * p1**2 * p2)
        + L(2 * p1 * p2**2, 2 * p1 * p2**2)
        + L(2 * p3**2 * p0, 2 * p3**2 * p0)
        + L(2 * p3 * p0**2, 2 * p3 * p0**2)
        + L(2 * p1 * p2 * p3, 2 * p1 * p2 * p3)
        + L(2 * p1 * p2 * p0, 2 * p1 * p2 * p0)
        + L(2 * p1 * p3 * p0, 2 * p1 * p3 * p0)
        + L(2 * p2 * p3 * p0, 2 * p2 * p3 * p0)
        + L(p1 * u, p1 * u)
        + L(p1 * v, p1 * v)
        + L(p2 * v, p2 * v)
        + L(p3 * v, p3 * v)
        + L(p2 * u, p2 * u)
        + L(p3 * u, p3 * u)
        + L(p0 * v, p0 * v)
        + L(u * p0, u * p0)
    )
    for q in (p1, p2, p3, p0):
        total = total + L(2 * q * m13, q * m13) + L(2 * q * m10, q * m10)
    total = (
        total
        - L(2 * s12 * s03, 0.5 * s12 * s03)
        - L(s12**2 + s03**2, (s12**2 + s03**2) / 4)
    )
    return total / 3


_VARIANT_ORDER = {"I": (1, 2, 3), "II": (3, 2, 1), "III": (1, 3, 2)}
_CLOSED = {"PSI": (2, _psi_I), "PHI": (3, _phi_I), "CHI": (3, _chi_I)}
CLOSED_FORM_SHOTS = {fam: shots for fam, (shots, _) in _CLOSED.items()}


def closed_form_grid(family: str, variant: str, p1, p2, p3) -> np.ndarray:
    """Closed-form rate of ``family``-``variant`` over arrays of error probabilities.

    Variants II and III evaluate variant I on permuted errors: (p3, p2, p1)
    and (p1, p3, p2) respectively.
    """
    _, fn = _CLOSED[family]
    e = (None, np.asarray(p1, float), np.asarray(p2, float), np.asarray(p3, float))
    i, j, k = _VARIANT_ORDER[variant]
    p0 = 1.0 - e[1] - e[2] - e[3]
    return fn(p0, e[i], e[j], e[k])


def closed_form_rate(code: CodeId, p: ProbVec4) -> float:
    if code.family not in _CLOSED:
        raise ValueError(f"no closed form for {code}")
    _, fn = _CLOSED[code.family]
    i, j, k = _VARIANT_ORDER[code.variant]
    e = (p.p0, p.p1, p.p2, p.p3)
    return float(fn(p.p0, e[i], e[j], e[k]))


def q2_closed_psi(variant: str, p: ProbVec4) -> float:
    """Two-use rate of the Psi code of the given variant."""
    return closed_form_rate(CodeId("PSI", variant), p)


def q3_closed_phi(variant: str, p: ProbVec4) -> float:
    """Three-use rate of the repetition (Phi) code of the given variant."""
    return closed_form_rate(CodeId("PHI", variant), p)


def q3_closed_chi(variant: str, p: ProbVec4) -> float:
    """Three-use rate of the chi code of the given variant."""
    return closed_form_rate(CodeId("CHI", variant), p)


class FamilyRate(NamedTuple):
    rate: float
    variant: str
    tie: bool


def best_family_rate(family: str, p: ProbVec4) -> FamilyRate:
    """Best closed-form rate over variants I-III.

    Ties go to the lowest variant; ``tie`` is set when the runner-up is
    within ``TIE_TOL`` of the winner.
    """
    rates = [closed_form_rate(CodeId(family, v), p) for v in VARIANTS]
    top = max(rates)
    close = [i for i, r in enumerate(rates) if top - r <= TIE_TOL]
    return FamilyRate(top, VARIANTS[close[0]], len(close) > 1)
