"""Pure-numpy solver inner loops (fallback for the compiled kernels).

Kept in lockstep with ``_core.pyx``: same update order, same stopping
logic, same canonical selection of the orthant-sphere projection.
"""

from __future__ import annotations

import numpy as np


def orthant_sphere_select(x):
    """Canonical nearest point on (nonnegative orthant intersect unit sphere)."""
    x = np.asarray(x, dtype=float)
    kappa = float(np.max(x))
    tau = 1e-12 * max(1.0, float(np.linalg.norm(x)))
    if kappa > tau:
        xp = np.maximum(x, 0.0)
        return xp / float(np.linalg.norm(xp))
    out = np.zeros_like(x)
    out[int(np.argmax(x >= kappa - tau))] = 1.0
    return out


def _wrap(x, iters, converged, residuals):
    return x, int(iters), bool(converged), np.asarray(residuals, dtype=float)


def pgm_loop(m, x0, step, max_iter, rel_tol):
    x = np.array(x0, dtype=float)
    residuals = []
    for k in range(1, max_iter + 1):
        xn = orthant_sphere_select(x - step * (m @ x))
        res = float(np.linalg.norm(xn - x)) / max(float(np.linalg.norm(x)), 1.0)
        residuals.append(res)
        x = xn
        if res < rel_tol:
            return _wrap(x, k, True, residuals)
    return _wrap(x, max_iter, False, residuals)


def fista_loop(m, x0, step, max_iter, rel_tol):
    x = np.array(x0, dtype=float)
    y = x.copy()
    t = 1.0
    residuals = []
    for k in range(1, max_iter + 1):
        xn = orthant_sphere_select(y - step * (m @ y))
        tn = (1.0 + np.sqrt(1.0 + 4.0 * t * t)) / 2.0
        y = xn + ((t - 1.0) / tn) * (xn - x)
        res = float(np.linalg.norm(xn - x)) / max(float(np.linalg.norm(x)), 1.0)
        residuals.append(res)
        x = xn
        t = tn
        if res < rel_tol:
            return _wrap(x, k, True, residuals)
    return _wrap(x, max_iter, False, residuals)


def lange_loop(m, x0, rho_init, rho_growth, rho_cap, max_iter, rel_tol):
    n = m.shape[0]
    eye = np.eye(n)
    x = np.array(x0, dtype=float)
    rho = float(rho_init)
    bump = rho_growth if rho_growth > 1.0 else 2.0
    residuals = []
    for k in range(1, max_iter + 1):
        p = orthant_sphere_select(x)
        try:
            xn = np.linalg.solve(m + rho * eye, rho * p)
        except np.linalg.LinAlgError:
            rho *= bump
            try:
                xn = np.linalg.solve(m + rho * eye, rho * p)
            except np.linalg.LinAlgError:
                return _wrap(x, k, False, residuals)
        res = float(np.linalg.norm(xn - x)) / max(float(np.linalg.norm(x)), 1.0)
        residuals.append(res)
        x = xn
        rho = min(rho * rho_growth, rho_cap)
        if not np.all(np.isfinite(x)):
            return _wrap(p, k, False, residuals)
        if res < rel_tol:
            return _wrap(x, k, True, residuals)
    return _wrap(x, max_iter, False, residuals)


def dr_loop(inv_mat, z0, max_iter, rel_tol):
    z = np.array(z0, dtype=float)
    p_prev = None
    p = z
    residuals = []
    for k in range(1, max_iter + 1):
        p = orthant_sphere_select(z)
        z = z + inv_mat @ (2.0 * p - z) - p
        if p_prev is not None:
            res = float(np.linalg.norm(p - p_prev)) / max(float(np.linalg.norm(p_prev)), 1.0)
            residuals.append(res)
            if res < rel_tol:
                return _wrap(p, k, True, residuals)
        p_prev = p
        if not np.all(np.isfinite(z)):
            return _wrap(p, k, False, residuals)
    return _wrap(p, max_iter, False, residuals)


def li_pong_loop(inv_mat, z0, max_iter, rel_tol):
    z = np.array(z0, dtype=float)
    y_prev = None
    y = z
    residuals = []
    for k in range(1, max_iter + 1):
        y = inv_mat @ z
        r = orthant_sphere_select(2.0 * y - z)
        z = z + r - y
        if y_prev is not None:
            res = float(np.linalg.norm(y - y_prev)) / max(float(np.linalg.norm(y_prev)), 1.0)
            residuals.append(res)
            if res < rel_tol:
                return _wrap(y, k, True, residuals)
        y_prev = y
        if not np.all(np.isfinite(z)):
            return _wrap(y, k, False, residuals)
    return _wrap(y, max_iter, False, residuals)
