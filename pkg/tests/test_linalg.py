import numpy as np
import pytest

from oracles import H, X, Z, loop_partial_trace, mp_eigvalsh, random_density, random_state
from pauli_coherent.errors import DimError, InvalidDistribution, InvalidState, NotHermitian, NotPSD
from pauli_coherent.linalg import (
    DensityOp,
    PureState,
    entropy_from_eigenvalues,
    hermitian_eigenvalues,
    kron,
    outer,
    partial_trace_R,
    shannon_entropy,
    von_neumann_entropy,
)

S2 = 1 / np.sqrt(2)
BELL = PureState(np.array([S2, 0, 0, S2]), 2, 2)


class TestKron:
    def test_identity(self):
        assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_bit_flip_both(self):
        ket00 = np.array([1, 0, 0, 0])
        assert np.array_equal(kron(X, X) @ ket00, [0, 0, 0, 1])

    def test_zz_diagonal(self):
        assert np.array_equal(kron(Z, Z), np.diag([1, -1, -1, 1]))

    def test_index_rule(self, rng):
        a = rng.normal(size=(2, 3))
        b = rng.normal(size=(3, 2))
        k = kron(a, b)
        for i, j, p, q in np.ndindex(2, 3, 3, 2):
            assert k[i * 3 + p, j * 2 + q] == a[i, j] * b[p, q]


class TestOuter:
    def test_basis(self):
        assert np.allclose(outer(PureState([1, 0], 2)).mat, np.diag([1, 0]))

    def test_uniform(self):
        assert np.allclose(outer(PureState([S2, S2], 2)).mat, 0.5)

    def test_bell(self):
        m = outer(BELL).mat
        want = np.zeros((4, 4))
        want[np.ix_([0, 3], [0, 3])] = 0.5
        assert np.allclose(m, want)

    def test_rank_one_trace_one(self, rng):
        rho = outer(PureState(random_state(rng, 8), 4, 2))
        rho.check()
        assert np.linalg.matrix_rank(rho.mat, tol=1e-10) == 1

    def test_unnormalized_rejected(self):
        with pytest.raises(InvalidState):
            outer(PureState([1.0, 1.0], 2))


class TestPartialTrace:
    def test_bell_gives_maximally_mixed(self):
        assert np.allclose(partial_trace_R(outer(BELL), 2, 2).mat, np.eye(2) / 2)

    def test_product(self, rng):
        a, b = random_state(rng, 4), random_state(rng, 2)
        got = partial_trace_R(outer(PureState(np.kron(a, b), 4, 2)), 4, 2).mat
        assert np.allclose(got, np.outer(a, a.conj()), atol=1e-12)

    def test_matches_loop_oracle(self, rng):
        rho = random_density(rng, 4)
        got = partial_trace_R(rho, 2, 2)
        assert np.allclose(got.mat, loop_partial_trace(rho, 2, 2), atol=1e-14)
        assert abs(np.trace(got.mat) - 1) < 1e-12

    def test_dim_mismatch(self):
        with pytest.raises(DimError):
            partial_trace_R(np.eye(4) / 4, 2, 3)


class TestEigenvalues:
    def test_diag(self):
        assert np.allclose(hermitian_eigenvalues(np.diag([0.75, 0.25])), [0.25, 0.75])

    def test_sigma_x(self):
        assert np.allclose(hermitian_eigenvalues(X), [-1, 1])

    def test_matches_high_precision(self, rng):
        a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        m = a + a.conj().T
        assert np.allclose(hermitian_eigenvalues(m), mp_eigvalsh(m), atol=1e-9, rtol=0)

    def test_reconstruction(self, rng):
        a = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
        m = a + a.conj().T
        lam, v = np.linalg.eigh(m)
        assert np.all(np.diff(hermitian_eigenvalues(m)) >= 0)
        assert np.linalg.norm(m - v @ np.diag(lam) @ v.conj().T) <= 1e-9 * 16

    def test_non_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))


class TestEntropy:
    def test_pure(self):
        assert von_neumann_entropy(outer(PureState([1, 0], 2))) == 0.0

    def test_maximally_mixed(self):
        assert von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2.0, abs=1e-12)

    def test_half_rank(self):
        assert von_neumann_entropy(np.diag([0.5, 0.5, 0, 0])) == pytest.approx(1.0, abs=1e-12)

    def test_small_negative_clamped(self):
        assert entropy_from_eigenvalues(np.array([-5e-9, 1.0])) == 0.0

    def test_large_negative_rejected(self):
        with pytest.raises(NotPSD):
            entropy_from_eigenvalues(np.array([-1e-6, 1.0]))

    def test_additive_on_products(self, rng):
        for _ in range(5):
            r, s = random_density(rng, 4), random_density(rng, 4)
            lhs = von_neumann_entropy(np.kron(r, s))
            assert lhs == pytest.approx(von_neumann_entropy(r) + von_neumann_entropy(s), abs=1e-9)

    def test_unitary_invariance(self, rng):
        u = np.kron(H, X) @ np.kron(Z, H)
        rho = random_density(rng, 4)
        assert von_neumann_entropy(u @ rho @ u.conj().T) == pytest.approx(
            von_neumann_entropy(rho), abs=1e-9
        )


class TestShannon:
    @pytest.mark.parametrize(
        "p, h", [((1, 0, 0, 0), 0.0), ((0.25,) * 4, 2.0), ((0.5, 0.5, 0, 0), 1.0)]
    )
    def test_values(self, p, h):
        assert shannon_entropy(p) == pytest.approx(h, abs=1e-12)

    def test_tiny_negative_tolerated(self):
        assert shannon_entropy([1.0 + 1e-13, -1e-13]) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("p", [(1.1, -0.1), (0.5, 0.4), (np.nan, 1.0)])
    def test_invalid(self, p):
        with pytest.raises(InvalidDistribution):
            shannon_entropy(p)


class TestTypes:
    def test_purification_round_trip(self, rng):
        m = random_state(rng, 12).reshape(4, 3)
        rho_s = partial_trace_R(outer(PureState(m.reshape(-1), 4, 3)), 4, 3)
        gram = m @ m.conj().T
        assert np.allclose(hermitian_eigenvalues(rho_s), np.linalg.eigvalsh(gram), atol=1e-9)

    def test_pure_state_read_only(self):
        psi = PureState(np.array([1.0, 0.0]), 2)
        with pytest.raises(ValueError):
            psi.amps[0] = 2.0

    def test_pure_state_dims(self):
        with pytest.raises(DimError):
            PureState(np.ones(4), 2, 3)
        with pytest.raises(InvalidState):
            PureState([np.inf, 0], 2)

    def test_density_check(self):
        DensityOp(np.eye(2) / 2).check()
        with pytest.raises(InvalidState):
            DensityOp(np.eye(2)).check()
        with pytest.raises(NotPSD):
            DensityOp(np.diag([1.5, -0.5])).check()
