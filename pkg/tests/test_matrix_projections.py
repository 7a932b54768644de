import numpy as np
import pytest

from helpers import min_distance, sample_psd_sphere

from conesphere import projections as pj
from conesphere.linalg import eig_sym, trace_inner


def random_sym(rng, n):
    a = rng.uniform(-1.0, 1.0, (n, n))
    return (a + a.T) / 2.0


def test_proj_psd_examples():
    got = pj.proj_psd(np.diag([2.0, -3.0]))
    np.testing.assert_allclose(got, np.diag([2.0, 0.0]), atol=1e-14)
    rng = np.random.default_rng(0)
    b = rng.standard_normal((3, 3))
    psd = b @ b.T
    np.testing.assert_allclose(pj.proj_psd(psd), psd, atol=1e-10)
    got = pj.proj_psd(np.array([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_allclose(got, [[0.5, 0.5], [0.5, 0.5]], atol=1e-14)


def test_proj_psd_properties():
    rng = np.random.default_rng(1)
    for _ in range(200):
        a = random_sym(rng, 4)
        p = pj.proj_psd(a)
        assert np.array_equal(p, p.T)
        assert eig_sym(p).eigenvalues[-1] >= -1e-8
        # The residual is orthogonal to the projection.
        assert trace_inner(p, a - p) <= 1e-8
        lam_plus = np.maximum(eig_sym(a).eigenvalues, 0.0)
        assert abs(np.linalg.norm(p) - np.linalg.norm(lam_plus)) <= 1e-9


def test_proj_rank1_sphere_examples():
    out = pj.proj_rank1_sphere(np.diag([5.0, 1.0]), 2.0)
    assert out.cardinality == pj.UNIQUE
    np.testing.assert_allclose(out.canonical, np.diag([2.0, 0.0]), atol=1e-14)
    assert abs(out.max_inner - 10.0) <= 1e-13

    out = pj.proj_rank1_sphere(np.eye(2), 1.0)
    assert out.cardinality == pj.CONTINUUM
    dec = eig_sym(out.canonical)
    np.testing.assert_allclose(dec.eigenvalues, [1.0, 0.0], atol=1e-12)
    assert abs(out.max_inner - 1.0) <= 1e-13

    out = pj.proj_rank1_sphere(np.diag([-1.0, -2.0]), 3.0)
    np.testing.assert_allclose(out.canonical, np.diag([3.0, 0.0]), atol=1e-14)
    assert abs(out.max_inner - (-3.0)) <= 1e-13


def test_proj_psd_cap_sphere_examples():
    out = pj.proj_psd_cap_sphere(np.diag([3.0, -1.0]), 1.0)
    assert out.cardinality == pj.UNIQUE
    np.testing.assert_allclose(out.canonical, np.diag([1.0, 0.0]), atol=1e-14)

    out = pj.proj_psd_cap_sphere(np.diag([0.0, -2.0]), 1.0)
    assert out.cardinality == pj.CONTINUUM
    np.testing.assert_allclose(out.canonical, np.diag([1.0, 0.0]), atol=1e-14)

    rng = np.random.default_rng(2)
    b = rng.standard_normal((3, 3))
    psd = b @ b.T
    rho = float(np.linalg.norm(psd))
    out = pj.proj_psd_cap_sphere(psd, rho)
    assert out.distance <= 1e-10 * max(1.0, rho)
    np.testing.assert_allclose(out.canonical, psd, atol=1e-9)


def test_proj_psd_cap_sphere_negative_leading():
    # Simple leading eigenvalue: the nearest-point set is a single matrix.
    out = pj.proj_psd_cap_sphere(np.diag([-1.0, -2.0]), 1.0)
    assert out.cardinality == pj.FINITE
    assert len(out.points) == 1
    np.testing.assert_allclose(out.canonical, np.diag([1.0, 0.0]), atol=1e-14)
    # Repeated leading eigenvalue: infinitely many nearest rank-one matrices.
    out = pj.proj_psd_cap_sphere(-np.eye(3), 1.0)
    assert out.cardinality == pj.CONTINUUM


def test_psd_cap_sphere_canonical_norm_and_rank():
    rng = np.random.default_rng(3)
    rho = 1.7
    for _ in range(100):
        a = random_sym(rng, 3)
        out = pj.proj_psd_cap_sphere(a, rho)
        assert abs(np.linalg.norm(out.canonical) - rho) <= 1e-10
        lam = eig_sym(a).eigenvalues
        if lam[0] < 0:
            sv = np.sort(np.abs(eig_sym(out.canonical).eigenvalues))[::-1]
            assert sv[1] <= 1e-8


def test_rank1_sphere_max_inner_is_supremum():
    rng = np.random.default_rng(4)
    rho = 1.3
    samples = sample_psd_sphere(rng, 3, rho, 2000)
    rank1 = []
    for s in samples:
        dec = eig_sym(s)
        u = dec.basis[:, 0]
        rank1.append(rho * np.outer(u, u))
    rank1 = np.asarray(rank1)
    for _ in range(25):
        a = random_sym(rng, 3)
        out = pj.proj_rank1_sphere(a, rho)
        inner = np.einsum("kij,ij->k", rank1, a)
        assert np.max(inner) <= out.max_inner + 1e-9
        assert trace_inner(out.canonical, a) >= np.max(inner) - 1e-9


def test_psd_cap_sphere_against_sampling():
    rng = np.random.default_rng(5)
    rho = 1.0
    samples = sample_psd_sphere(rng, 3, rho, 4000)
    for _ in range(30):
        a = random_sym(rng, 3)
        out = pj.proj_psd_cap_sphere(a, rho)
        assert np.linalg.norm(a - out.canonical) <= min_distance(a, samples) + 1e-6


def test_matrix_projectors_reject_bad_rho():
    with pytest.raises(ValueError):
        pj.proj_rank1_sphere(np.eye(2), 0.0)
    with pytest.raises(ValueError):
        pj.proj_psd_cap_sphere(np.eye(2), -1.0)
