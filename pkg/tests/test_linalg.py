import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_complex
from oracles import charpoly_eigenvalues
from pure_eof.errors import DimensionError, InvalidInputError
from pure_eof.linalg import adjoint, hs_norm, mat_mul, svd, trace


def matrices(max_dim=5):
    return st.tuples(
        st.integers(1, max_dim), st.integers(1, max_dim), st.integers(0, 2**32 - 1)
    ).map(lambda t: random_complex(np.random.default_rng(t[2]), (t[0], t[1])))


def test_svd_diagonal():
    _, s, _ = svd(np.diag([0.8, 0.6]))
    np.testing.assert_allclose(s, [0.8, 0.6], atol=1e-15)


def test_svd_scaled_identity():
    _, s, _ = svd(np.eye(2) / np.sqrt(2))
    np.testing.assert_allclose(s, [2**-0.5, 2**-0.5], atol=1e-15)


def test_svd_matches_charpoly_oracle(rng):
    m = random_complex(rng, (3, 4))
    _, s, _ = svd(m)
    expected = charpoly_eigenvalues(m @ m.conj().T)
    np.testing.assert_allclose(s**2, expected, atol=1e-10)


def test_svd_rejects_nonfinite():
    with pytest.raises(InvalidInputError):
        svd([[1.0, np.nan], [0.0, 1.0]])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_svd_roundtrip_and_orthonormality(m):
    u, s, v = svd(m)
    recon = u @ np.diag(s) @ v.conj().T
    assert hs_norm(m - recon) <= 1e-12 * max(1.0, hs_norm(m))
    k = len(s)
    np.testing.assert_allclose(u.conj().T @ u, np.eye(k), atol=1e-12)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(k), atol=1e-12)
    assert np.all(np.diff(s) <= 0)
    assert np.all(s >= 0)


@settings(max_examples=40, deadline=None)
@given(matrices(), st.integers(0, 2**32 - 1))
def test_singular_values_permutation_invariant(m, seed):
    perm_rng = np.random.default_rng(seed)
    shuffled = m[perm_rng.permutation(m.shape[0])][:, perm_rng.permutation(m.shape[1])]
    np.testing.assert_allclose(svd(shuffled)[1], svd(m)[1], atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_hs_norm_squared_is_trace(m):
    assert abs(hs_norm(m) ** 2 - trace(mat_mul(m, adjoint(m))).real) <= 1e-12 * max(1, hs_norm(m) ** 2)


@pytest.mark.parametrize(
    "m, expected",
    [(np.eye(2), np.sqrt(2)), (np.zeros((2, 2)), 0.0), ([[3, 4j], [0, 0]], 5.0)],
)
def test_hs_norm_values(m, expected):
    assert hs_norm(m) == pytest.approx(expected, abs=1e-15)


def test_adjoint():
    np.testing.assert_array_equal(adjoint([[0, 1j], [0, 0]]), [[0, 0], [-1j, 0]])


def test_adjoint_involution(rng):
    a = random_complex(rng, (3, 5))
    np.testing.assert_array_equal(adjoint(adjoint(a)), a)


def test_trace_identity():
    assert trace(np.eye(3)) == 3


def test_product_with_adjoint_is_hermitian(rng):
    a = random_complex(rng, (4, 3))
    h = mat_mul(a, adjoint(a))
    assert np.max(np.abs(h - h.conj().T)) <= 1e-14


def test_shape_errors():
    with pytest.raises(DimensionError):
        mat_mul(np.ones((2, 3)), np.ones((2, 3)))
    with pytest.raises(DimensionError):
        trace(np.ones((2, 3)))
