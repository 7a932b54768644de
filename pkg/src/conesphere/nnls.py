"""Nonnegative least squares by the Lawson-Hanson active-set method."""

from __future__ import annotations

import numpy as np


def nnls(a: np.ndarray, b: np.ndarray, tol: float = 1e-12, maxiter: int | None = None):
    """Minimize ``||a @ x - b||`` subject to ``x >= 0``.

    Parameters
    ----------
    a : (m, n) array
    b : (m,) array
    tol : dual feasibility tolerance, scaled by ``max(1, ||a.T @ b||_inf)``
    maxiter : cap on passive-set changes (default ``3 * n``)

    Returns
    -------
    x : (n,) array, the nonnegative minimizer
    rnorm : float, residual norm at the solution
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    m, n = a.shape
    if maxiter is None:
        maxiter = max(3 * n, 30)
    scale = max(1.0, float(np.max(np.abs(a.T @ b), initial=0.0)))
    dual_tol = tol * scale

    x = np.zeros(n)
    passive = np.zeros(n, dtype=bool)
    w = a.T @ (b - a @ x)

    for _ in range(maxiter):
        if passive.all() or np.max(w[~passive], initial=-np.inf) <= dual_tol:
            break
        free = np.where(~passive)[0]
        passive[free[np.argmax(w[free])]] = True

        while True:
            idx = np.where(passive)[0]
            s = np.zeros(n)
            s[idx] = np.linalg.lstsq(a[:, idx], b, rcond=None)[0]
            if np.min(s[idx]) > 0.0:
                x = s
                break
            # Step back to the boundary and drop the blocking variables.
            neg = idx[s[idx] <= 0.0]
            alpha = np.min(x[neg] / (x[neg] - s[neg]))
            x = x + alpha * (s - x)
            passive[np.abs(x) < tol] = False
            x[~passive] = 0.0
            if not passive.any():
                break
        w = a.T @ (b - a @ x)

    return x, float(np.linalg.norm(b - a @ x))
