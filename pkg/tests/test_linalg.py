import numpy as np
import pytest

from mixwit.exceptions import NonFinite, NonHermitian, NotAState, ShapeMismatch
from mixwit.linalg import (
    hermitian_eigenvalues,
    partial_trace,
    partial_transpose,
    tensor_product,
    trace_norm,
    validate_density,
)
from mixwit.states import WernerParams, bell_state, werner_state

from conftest import random_product_state, random_state


class TestEigenvalues:
    def test_identity(self):
        np.testing.assert_allclose(hermitian_eigenvalues(np.eye(3)), [1, 1, 1])

    def test_diagonal_sorted_descending(self):
        np.testing.assert_allclose(hermitian_eigenvalues(np.diag([0.3, 0.7])), [0.7, 0.3])

    def test_bell_projector(self):
        np.testing.assert_allclose(hermitian_eigenvalues(bell_state(2)), [1, 0, 0, 0], atol=1e-12)

    def test_vectors_reconstruct(self):
        rho = random_state(2, 3, seed=4)
        w, v = hermitian_eigenvalues(rho, return_vectors=True)
        np.testing.assert_allclose((v * w) @ v.conj().T, rho, atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NonHermitian):
            hermitian_eigenvalues(np.array([[1.0, 1.0], [0.0, 1.0]]))

    def test_rejects_nan(self):
        with pytest.raises(NonFinite):
            hermitian_eigenvalues(np.array([[np.nan, 0], [0, 1.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(ShapeMismatch):
            hermitian_eigenvalues(np.zeros((2, 3)))


class TestTensorProduct:
    def test_identities(self):
        np.testing.assert_array_equal(tensor_product(np.eye(2), np.eye(2)), np.eye(4))

    def test_basis_bookkeeping(self):
        out = tensor_product(np.diag([1, 0]), np.diag([0, 1]))
        np.testing.assert_array_equal(out, np.diag([0, 1, 0, 0]))

    def test_maximally_mixed(self):
        np.testing.assert_allclose(tensor_product(np.eye(2) / 2, np.eye(3) / 3), np.eye(6) / 6)

    def test_a_major_index(self):
        a = np.arange(4.0).reshape(2, 2)
        b = np.arange(9.0).reshape(3, 3)
        out = tensor_product(a, b)
        # (i*D_B + k, j*D_B + l) -> a[i, j] b[k, l]
        assert out[1 * 3 + 2, 0 * 3 + 1] == a[1, 0] * b[2, 1]


class TestPartialTrace:
    def test_product_state(self):
        rho, a, b = random_product_state(2, 3, seed=1)
        np.testing.assert_allclose(partial_trace(rho, (2, 3), keep="A"), a, atol=1e-12)
        np.testing.assert_allclose(partial_trace(rho, (2, 3), keep="B"), b, atol=1e-12)

    def test_werner_marginal(self):
        rho = werner_state(WernerParams(2, 0.5))
        np.testing.assert_allclose(partial_trace(rho, (2, 2), keep="A"), np.eye(2) / 2, atol=1e-15)

    def test_trace_preserved(self):
        rho = random_state(3, 2, seed=2)
        assert np.trace(partial_trace(rho, (3, 2), keep="B")).real == pytest.approx(1.0, abs=1e-12)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            partial_trace(np.eye(6) / 6, (2, 2))

    def test_bad_side(self):
        with pytest.raises(ValueError):
            partial_trace(np.eye(4) / 4, (2, 2), keep="C")


class TestPartialTranspose:
    def test_bell_eigenvalues(self):
        w = hermitian_eigenvalues(partial_transpose(bell_state(2), (2, 2)))
        np.testing.assert_allclose(w, [0.5, 0.5, 0.5, -0.5], atol=1e-12)

    def test_involution(self):
        rho = random_state(2, 3, seed=3)
        twice = partial_transpose(partial_transpose(rho, (2, 3)), (2, 3))
        np.testing.assert_array_equal(twice, rho)

    def test_product_is_psd(self):
        rho, _, _ = random_product_state(3, 2, seed=5)
        assert hermitian_eigenvalues(partial_transpose(rho, (3, 2)))[-1] > -1e-12

    def test_sides_related_by_full_transpose(self):
        rho = random_state(2, 3, seed=6)
        np.testing.assert_allclose(
            partial_transpose(rho, (2, 3), side="A"), partial_transpose(rho, (2, 3), side="B").T
        )


class TestTraceNorm:
    def test_density_matrix(self):
        assert trace_norm(random_state(2, 2, seed=7)) == pytest.approx(1.0, abs=1e-12)

    def test_indefinite(self):
        assert trace_norm(np.diag([0.5, -0.5])) == pytest.approx(1.0)

    def test_bell_partial_transpose(self):
        assert trace_norm(partial_transpose(bell_state(2), (2, 2))) == pytest.approx(2.0)


class TestValidateDensity:
    def test_accepts_maximally_mixed(self):
        np.testing.assert_array_equal(validate_density(np.eye(4) / 4), np.eye(4) / 4)

    def test_clamps_round_off(self):
        np.testing.assert_allclose(validate_density(np.diag([1.0, -1e-12])), np.diag([1.0, 0.0]), atol=1e-15)

    def test_rejects_negative(self):
        with pytest.raises(NotAState) as exc:
            validate_density(np.diag([1.5, -0.5]))
        assert exc.value.invariant == "positivity"

    def test_names_trace_invariant(self):
        with pytest.raises(NotAState, match="trace"):
            validate_density(np.eye(2))

    def test_names_hermitian_invariant(self):
        with pytest.raises(NotAState, match="hermitian"):
            validate_density(np.array([[0.5, 0.1], [0.3, 0.5]]))
