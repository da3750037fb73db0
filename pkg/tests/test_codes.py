import numpy as np
import pytest

from pauli_coherent.channel import apply_pauli_string
from pauli_coherent.codes import (
    FAMILIES,
    VARIANTS,
    CodeId,
    basis_change,
    basis_ket,
    build_code,
    parse_code_id,
    stabilizer_check,
)
from pauli_coherent.errors import Unsupported
from pauli_coherent.linalg import PureState, outer, partial_trace_R, von_neumann_entropy
from oracles import PAULI

ALL = [CodeId("MES")] + [CodeId(f, v) for f in FAMILIES[1:] for v in VARIANTS]


def test_mes_amplitudes():
    psi = build_code("mes")
    assert (psi.dim_s, psi.dim_r) == (2, 2)
    assert np.allclose(psi.amps, np.array([1, 0, 0, 1]) / np.sqrt(2))


def test_psi1_amplitudes():
    psi = build_code("psi1")
    want = np.zeros(16)
    # S-major: index = s * 4 + r
    for s, r in [(0b00, 0b10), (0b00, 0b11), (0b11, 0b00), (0b11, 0b01)]:
        want[s * 4 + r] = 0.5
    assert np.allclose(psi.amps, want)


def test_phi1_amplitudes():
    psi = build_code("phi1")
    assert (psi.dim_s, psi.dim_r) == (8, 2)
    want = np.zeros(16)
    want[0b000 * 2 + 0] = want[0b111 * 2 + 1] = 1 / np.sqrt(2)
    assert np.allclose(psi.amps, want)


def test_chi1_signs():
    psi = build_code("chi1")
    assert (psi.dim_s, psi.dim_r) == (8, 8)
    c = 1 / (2 * np.sqrt(2))
    m = psi.matrix
    assert m[0b101, 0b001] == pytest.approx(-c)
    assert m[0b111, 0b010] == pytest.approx(-c)
    assert m[0b101, 0b011] == pytest.approx(c)
    assert np.count_nonzero(np.abs(m) > 1e-12) == 8


@pytest.mark.parametrize("code", ALL, ids=str)
def test_unit_norm(code):
    assert abs(build_code(code).norm() - 1) <= 1e-12


@pytest.mark.parametrize("family", FAMILIES[1:])
@pytest.mark.parametrize("variant, axis", [("II", "x"), ("III", "y")])
def test_variants_are_basis_rotations(family, variant, axis):
    base = build_code(CodeId(family, "I"))
    u = basis_change(axis)
    n_qubits = int(np.log2(base.dim))
    full = np.eye(1)
    for _ in range(n_qubits):
        full = np.kron(full, u)
    rotated = PureState(full @ base.amps, base.dim_s, base.dim_r)
    assert abs(rotated.fidelity(build_code(CodeId(family, variant))) - 1) <= 1e-12


@pytest.mark.parametrize("variant", VARIANTS)
def test_reduced_entropies(variant):
    chi = build_code(CodeId("CHI", variant))
    phi = build_code(CodeId("PHI", variant))
    assert von_neumann_entropy(partial_trace_R(outer(chi), 8, 8)) == pytest.approx(2.0, abs=1e-10)
    assert von_neumann_entropy(partial_trace_R(outer(phi), 8, 2)) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("axis, pauli", [("x", 1), ("y", 2), ("z", 3)])
def test_basis_kets_are_eigenvectors(axis, pauli):
    for sign, ev in (("+", 1), ("-", -1)):
        k = basis_ket(axis, sign)
        assert np.allclose(PAULI[pauli] @ k, ev * k)


class TestStabilizer:
    def test_psi1_zz(self):
        assert stabilizer_check("psi1")

    def test_psi2_xx(self):
        assert stabilizer_check("psi2")

    def test_psi3_yy(self):
        assert stabilizer_check("psi3")

    def test_psi1_not_xx(self):
        psi = build_code("psi1")
        assert not np.allclose(apply_pauli_string(psi, (1, 1)).amps, psi.amps, atol=1e-12)

    def test_non_psi_rejected(self):
        with pytest.raises(Unsupported):
            stabilizer_check("phi1")


class TestNames:
    @pytest.mark.parametrize(
        "text, want",
        [("mes", CodeId("MES")), ("psi1", CodeId("PSI")), ("PHI-II", CodeId("PHI", "II")),
         ("chi3", CodeId("CHI", "III")), ("chi_2", CodeId("CHI", "II"))],
    )
    def test_parse(self, text, want):
        assert parse_code_id(text) == want

    @pytest.mark.parametrize("code", ALL, ids=str)
    def test_name_round_trip(self, code):
        assert parse_code_id(code.name) == code
        assert parse_code_id(str(code)) == code

    @pytest.mark.parametrize("text", ["psi4", "foo", "mes2", ""])
    def test_bad_names(self, text):
        with pytest.raises(ValueError):
            parse_code_id(text)
