"""The named quantum codes: maximally entangled, Psi, Phi (repetition) and chi.

Every code is a pure state on S (x) R with the S qubits first. Each family
is written over a single-qubit eigenbasis ``{|a>, |a_bar>}`` of one Pauli
operator; variant I uses Z, II uses X and III uses Y.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .channel import apply_pauli_string
from .errors import Unsupported
from .linalg import PureState

__all__ = [
    "FAMILIES",
    "VARIANTS",
    "CodeId",
    "basis_ket",
    "build_code",
    "stabilizer_check",
    "parse_code_id",
    "basis_change",
]

FAMILIES = ("MES", "PSI", "PHI", "CHI")
VARIANTS = ("I", "II", "III")
VARIANT_AXIS = {"I": "z", "II": "x", "III": "y"}
# Channel uses each family is defined for.
FAMILY_SHOTS = {"MES": 1, "PSI": 2, "PHI": 3, "CHI": 3}

_S2 = 1.0 / np.sqrt(2.0)
_KETS = {
    ("z", "+"): np.array([1.0, 0.0], dtype=np.complex128),
    ("z", "-"): np.array([0.0, 1.0], dtype=np.complex128),
    ("x", "+"): np.array([_S2, _S2], dtype=np.complex128),
    ("x", "-"): np.array([_S2, -_S2], dtype=np.complex128),
    ("y", "+"): np.array([_S2, 1j * _S2], dtype=np.complex128),
    ("y", "-"): np.array([_S2, -1j * _S2], dtype=np.complex128),
}

# (sign, S label, R label); '0' is |a>, '1' is |a_bar>.
_TERMS = {
    "MES": [(1, "0", "0"), (1, "1", "1")],
    "PSI": [(1, "00", "10"), (1, "00", "11"), (1, "11", "00"), (1, "11", "01")],
    "PHI": [(1, "000", "0"), (1, "111", "1")],
    "CHI": [
        (1, "000", "000"),
        (1, "111", "000"),
        (1, "010", "001"),
        (-1, "101", "001"),
        (1, "000", "010"),
        (-1, "111", "010"),
        (1, "010", "011"),
        (1, "101", "011"),
    ],
}


@dataclass(frozen=True, order=True)
class CodeId:
    family: str
    variant: str = "I"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown code family {self.family!r}")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.family == "MES" and self.variant != "I":
            raise ValueError("the maximally entangled code has no variants")

    @property
    def shots(self) -> int:
        return FAMILY_SHOTS[self.family]

    @property
    def name(self) -> str:
        """CLI-style name: ``mes``, ``psi1`` ... ``chi3``."""
        if self.family == "MES":
            return "mes"
        return f"{self.family.lower()}{VARIANTS.index(self.variant) + 1}"

    def __str__(self) -> str:
        return "MES" if self.family == "MES" else f"{self.family}-{self.variant}"


def parse_code_id(text: str) -> CodeId:
    """Accept ``psi1``, ``PSI-I``, ``phi-2``, ``mes`` and similar spellings."""
    t = text.strip().upper().replace("_", "-")
    if t == "MES":
        return CodeId("MES")
    m = re.fullmatch(r"(PSI|PHI|CHI)-?(I{1,3}|[123])", t)
    if not m:
        raise ValueError(f"cannot parse code id {text!r}")
    v = m.group(2)
    variant = VARIANTS[int(v) - 1] if v.isdigit() else v
    return CodeId(m.group(1), variant)


def basis_ket(axis: str, sign: str = "+") -> np.ndarray:
    """The +1 (``sign='+'``) or -1 eigenvector of sigma_axis."""
    return _KETS[(axis, sign)].copy()


def basis_change(axis: str) -> np.ndarray:
    """Unitary sending |0>, |1> to the +1, -1 eigenvectors of sigma_axis."""
    return np.column_stack([_KETS[(axis, "+")], _KETS[(axis, "-")]])


def _product_ket(labels: str, axis: str) -> np.ndarray:
    out = np.ones(1, dtype=np.complex128)
    for c in labels:
        out = np.kron(out, _KETS[(axis, "+" if c == "0" else "-")])
    return out


@lru_cache(maxsize=None)
def _code_amps(code: CodeId) -> np.ndarray:
    axis = "z" if code.family == "MES" else VARIANT_AXIS[code.variant]
    terms = _TERMS[code.family]
    vec = sum(
        sign * np.kron(_product_ket(s, axis), _product_ket(r, axis)) for sign, s, r in terms
    )
    vec = vec / np.linalg.norm(vec)
    vec.setflags(write=False)
    return vec


def build_code(code: CodeId | str) -> PureState:
    """The normalized state of a named code."""
    if isinstance(code, str):
        code = parse_code_id(code)
    _, s_lab, r_lab = _TERMS[code.family][0]
    return PureState(_code_amps(code), 2 ** len(s_lab), 2 ** len(r_lab))


def stabilizer_check(code: CodeId | str, atol: float = 1e-12) -> bool:
    """Whether ``sigma_a (x) sigma_a`` on the two S qubits leaves a Psi code unchanged.

    ``a`` is the variant's own axis (ZZ for I, XX for II, YY for III).
    """
    if isinstance(code, str):
        code = parse_code_id(code)
    if code.family != "PSI":
        raise Unsupported(f"stabilizer check is only defined for PSI codes, not {code}")
    a = {"z": 3, "x": 1, "y": 2}[VARIANT_AXIS[code.variant]]
    psi = build_code(code)
    return bool(np.allclose(apply_pauli_string(psi, (a, a)).amps, psi.amps, rtol=0, atol=atol))

