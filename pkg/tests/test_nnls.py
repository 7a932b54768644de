import numpy as np

from conesphere.nnls import nnls


def kkt_holds(a, b, x, tol=1e-8):
    grad = a.T @ (a @ x - b)
    if np.min(x) < -tol:
        return False
    active = x <= tol
    # Zero gradient on the support, nonnegative gradient at the bounds.
    if np.any(np.abs(grad[~active]) > tol * max(1.0, np.max(np.abs(grad)))):
        return False
    return bool(np.all(grad[active] >= -tol))


def test_unconstrained_solution_recovered():
    a = np.array([[2.0, 0.0], [0.0, 3.0], [1.0, 1.0]])
    x_true = np.array([0.5, 1.5])
    b = a @ x_true
    x, rnorm = nnls(a, b)
    np.testing.assert_allclose(x, x_true, atol=1e-12)
    assert rnorm <= 1e-12


def test_active_constraint():
    # Least squares pulls the first coefficient negative; NNLS clamps it.
    a = np.eye(2)
    b = np.array([-1.0, 2.0])
    x, rnorm = nnls(a, b)
    np.testing.assert_allclose(x, [0.0, 2.0], atol=1e-14)
    assert abs(rnorm - 1.0) <= 1e-14


def test_kkt_on_random_problems():
    rng = np.random.default_rng(12)
    for _ in range(300):
        m = int(rng.integers(2, 7))
        n = int(rng.integers(1, 6))
        a = rng.standard_normal((m, n))
        b = rng.standard_normal(m)
        x, rnorm = nnls(a, b)
        assert kkt_holds(a, b, x)
        assert abs(rnorm - np.linalg.norm(a @ x - b)) <= 1e-12


def test_matches_brute_force_on_grid():
    rng = np.random.default_rng(13)
    grid = np.linspace(0.0, 3.0, 121)
    gx, gy = np.meshgrid(grid, grid)
    cand = np.column_stack([gx.ravel(), gy.ravel()])
    for _ in range(20):
        a = rng.standard_normal((4, 2))
        b = rng.standard_normal(4)
        x, rnorm = nnls(a, b)
        best = np.min(np.linalg.norm(cand @ a.T - b, axis=1))
        assert rnorm <= best + 1e-9
