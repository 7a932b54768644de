"""Shared test utilities: dense samplers and membership checks.

The samplers draw points *from* each target set so that projector
outputs can be validated against brute-force nearest-point searches,
independently of the closed-form code paths under test.
"""

import numpy as np


def sample_orthant_sphere(rng, n, count):
    """Points of (nonnegative orthant) ∩ (unit sphere)."""
    pts = np.abs(rng.standard_normal((count, n)))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return pts


def sample_fg_cone_sphere(rng, generators, rho, count):
    """Points of (positive span of generators) ∩ (sphere of radius rho)."""
    k = generators.shape[0]
    coeffs = np.abs(rng.standard_normal((count, k)))
    pts = coeffs @ generators
    norms = np.linalg.norm(pts, axis=1, keepdims=True)
    keep = norms[:, 0] > 1e-12
    pts = rho * pts[keep] / norms[keep]
    # Guarantee the generators themselves are present.
    return np.vstack([pts, generators])


def sample_lorentz_sphere(rng, dim_head, alpha, rho, count):
    """Points of the ice-cream cone ∩ sphere, packed with the scalar last."""
    dirs = rng.standard_normal((count, dim_head))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    theta = rng.uniform(0.0, np.arctan(alpha), count)
    head = rho * np.sin(theta)[:, None] * dirs
    tail = rho * np.cos(theta)
    return np.hstack([head, tail[:, None]])


def sample_psd_sphere(rng, n, rho, count):
    """PSD matrices of Frobenius norm rho, shape (count, n, n)."""
    out = np.empty((count, n, n))
    for i in range(count):
        q, _ = np.linalg.qr(rng.standard_normal((n, n)))
        lam = np.abs(rng.standard_normal(n))
        lam /= np.linalg.norm(lam)
        out[i] = (q * (rho * lam)) @ q.T
        out[i] = (out[i] + out[i].T) / 2.0
    return out


def sample_circle(rng, n, axes, rho, count):
    """Points of (coordinate subspace) ∩ (sphere of radius rho)."""
    pts = np.zeros((count, n))
    coords = rng.standard_normal((count, len(axes)))
    coords /= np.linalg.norm(coords, axis=1, keepdims=True)
    pts[:, axes] = rho * coords
    return pts


def min_distance(x, samples):
    """Smallest Euclidean distance from x to the sampled points."""
    flat = samples.reshape(samples.shape[0], -1)
    return float(np.min(np.linalg.norm(flat - x.ravel(), axis=1)))


def random_orthonormal_set(rng, n, k):
    """k orthonormal vectors in R^n (rows)."""
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return q[:, :k].T.copy()


def in_orthant_sphere(x, tol=1e-10):
    return abs(np.linalg.norm(x) - 1.0) <= tol and np.min(x) >= -tol


def in_lorentz(head, tail, alpha, tol=1e-10):
    return np.linalg.norm(head) <= alpha * tail + tol
