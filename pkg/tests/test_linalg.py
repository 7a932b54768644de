import numpy as np
import pytest

from conesphere.linalg import (
    as_sym_matrix,
    as_vector,
    eig_sym,
    operator_norm,
    positive_part,
    trace_inner,
)


def test_eig_identity():
    dec = eig_sym(np.eye(3))
    np.testing.assert_allclose(dec.eigenvalues, [1.0, 1.0, 1.0], rtol=0, atol=0)
    np.testing.assert_allclose(dec.basis.T @ dec.basis, np.eye(3), atol=1e-14)


def test_eig_diagonal_sorted_descending():
    dec = eig_sym(np.diag([3.0, -1.0]))
    np.testing.assert_allclose(dec.eigenvalues, [3.0, -1.0], atol=0)
    # Already diagonal: the basis is a signed permutation of identity columns.
    np.testing.assert_allclose(np.abs(dec.basis), np.eye(2), atol=1e-14)


def test_eig_2x2_hand_derived():
    # Characteristic polynomial of [[1,-2],[-2,1]]: (1-l)^2 - 4 = 0, l = 3, -1.
    dec = eig_sym(np.array([[1.0, -2.0], [-2.0, 1.0]]))
    np.testing.assert_allclose(dec.eigenvalues, [3.0, -1.0], atol=1e-14)
    s = 1.0 / np.sqrt(2.0)
    # Sign convention: first sizable component nonnegative.
    np.testing.assert_allclose(dec.basis[:, 0], [s, -s], atol=1e-14)
    np.testing.assert_allclose(dec.basis[:, 1], [s, s], atol=1e-14)


def test_eig_reconstruction_batch():
    rng = np.random.default_rng(42)
    for _ in range(1000):
        n = int(rng.integers(1, 9))
        a = rng.uniform(-1.0, 1.0, (n, n))
        a = (a + a.T) / 2.0
        dec = eig_sym(a)
        scale = max(1.0, np.linalg.norm(a))
        assert np.linalg.norm(a - dec.reconstruct()) <= 1e-10 * scale
        assert np.linalg.norm(dec.basis.T @ dec.basis - np.eye(n)) <= 1e-10 * n


def test_frobenius_equals_eigenvalue_norm():
    rng = np.random.default_rng(7)
    for _ in range(200):
        n = int(rng.integers(1, 7))
        a = rng.standard_normal((n, n))
        a = (a + a.T) / 2.0
        lam = eig_sym(a).eigenvalues
        fro = np.linalg.norm(a)
        assert abs(fro - np.linalg.norm(lam)) <= 1e-10 * max(1.0, fro)


def test_theobald_inequality():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        n = int(rng.integers(1, 6))
        a = rng.uniform(-1.0, 1.0, (n, n))
        b = rng.uniform(-1.0, 1.0, (n, n))
        a = (a + a.T) / 2.0
        b = (b + b.T) / 2.0
        lhs = trace_inner(a, b)
        rhs = float(eig_sym(a).eigenvalues @ eig_sym(b).eigenvalues)
        assert rhs - lhs >= -1e-10


def test_eig_deterministic():
    rng = np.random.default_rng(5)
    a = rng.standard_normal((6, 6))
    a = (a + a.T) / 2.0
    d1 = eig_sym(a)
    d2 = eig_sym(a)
    assert np.array_equal(d1.eigenvalues, d2.eigenvalues)
    assert np.array_equal(d1.basis, d2.basis)


def test_eig_repeated_eigenvalues_stable_order():
    dec = eig_sym(np.diag([2.0, 2.0, 1.0]))
    np.testing.assert_allclose(dec.eigenvalues, [2.0, 2.0, 1.0], atol=0)
    np.testing.assert_allclose(np.abs(dec.basis), np.eye(3), atol=1e-14)


def test_operator_norm_examples():
    assert operator_norm(np.eye(2)) == 1.0
    assert abs(operator_norm(np.array([[1.0, -2.0], [-2.0, 1.0]])) - 3.0) <= 1e-13
    assert operator_norm(np.zeros((3, 3))) == 0.0


def test_trace_inner_examples():
    assert trace_inner(np.eye(2), np.eye(2)) == 2.0
    assert trace_inner(np.diag([1.0, 2.0]), np.diag([3.0, 4.0])) == 11.0
    rng = np.random.default_rng(0)
    a = rng.standard_normal((4, 4))
    a = (a + a.T) / 2.0
    b = rng.standard_normal((4, 4))
    b = (b + b.T) / 2.0
    assert abs(trace_inner(a, b) - float(np.sum(a * b))) <= 1e-14


def test_trace_inner_dimension_mismatch():
    with pytest.raises(ValueError):
        trace_inner(np.eye(2), np.eye(3))


def test_positive_part():
    np.testing.assert_array_equal(positive_part([1.0, -1.0]), [1.0, 0.0])
    np.testing.assert_array_equal(positive_part([-2.0, -3.0]), [0.0, 0.0])
    np.testing.assert_array_equal(positive_part([0.5, 0.0, -0.5]), [0.5, 0.0, 0.0])


def test_vector_validation():
    with pytest.raises(ValueError):
        as_vector([np.nan, 1.0])
    with pytest.raises(ValueError):
        as_vector([[1.0, 2.0]])
    with pytest.raises(ValueError):
        as_vector([])


def test_sym_matrix_validation():
    # Mild asymmetry is repaired to exact storage symmetry.
    a = np.array([[1.0, 2.0 + 1e-12], [2.0, 1.0]])
    m = as_sym_matrix(a)
    assert m[0, 1] == m[1, 0]
    # Gross asymmetry is rejected.
    with pytest.raises(ValueError):
        as_sym_matrix(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        as_sym_matrix(np.array([[np.inf, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        as_sym_matrix(np.ones((2, 3)))


def test_eig_rejects_asymmetric():
    with pytest.raises(ValueError):
        eig_sym(np.array([[0.0, 1.0], [0.5, 0.0]]))
