# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled solver inner loops.

Mirrors ``_pure.py`` operation for operation; the matrices here are tiny
(copositivity tests run at N <= 12), so the payoff is removing Python
call overhead from loops that run for up to a thousand iterations per
matrix, thousands of matrices per benchmark.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, fabs, isfinite, sqrt

cnp.import_array()


cdef double _norm(double[::1] v) noexcept nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(v.shape[0]):
        s += v[i] * v[i]
    return sqrt(s)


cdef void _matvec(double[:, ::1] m, double[::1] x, double[::1] out) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double s
    for i in range(m.shape[0]):
        s = 0.0
        for j in range(m.shape[1]):
            s += m[i, j] * x[j]
        out[i] = s


cdef void _select(double[::1] x, double[::1] out) noexcept nogil:
    # Canonical nearest point on (nonnegative orthant) ∩ (unit sphere).
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t i
    cdef double kappa = -INFINITY
    cdef double nrm = _norm(x)
    cdef double tau, s
    for i in range(n):
        if x[i] > kappa:
            kappa = x[i]
    tau = 1e-12 * (nrm if nrm > 1.0 else 1.0)
    if kappa > tau:
        s = 0.0
        for i in range(n):
            out[i] = x[i] if x[i] > 0.0 else 0.0
            s += out[i] * out[i]
        s = sqrt(s)
        for i in range(n):
            out[i] /= s
    else:
        for i in range(n):
            out[i] = 0.0
        for i in range(n):
            if x[i] >= kappa - tau:
                out[i] = 1.0
                break


cdef double _rel_step(double[::1] xn, double[::1] x) noexcept nogil:
    cdef double diff = 0.0, prev = _norm(x)
    cdef Py_ssize_t i
    cdef double d
    for i in range(x.shape[0]):
        d = xn[i] - x[i]
        diff += d * d
    return sqrt(diff) / (prev if prev > 1.0 else 1.0)


cdef bint _solve(double[:, ::1] a, double[::1] b, double[::1] x) noexcept nogil:
    # Gaussian elimination with partial pivoting on scratch copies.
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, k, piv
    cdef double best, factor, tmp
    for i in range(n):
        x[i] = b[i]
    for k in range(n):
        piv = k
        best = fabs(a[k, k])
        for i in range(k + 1, n):
            if fabs(a[i, k]) > best:
                best = fabs(a[i, k])
                piv = i
        if best == 0.0 or not isfinite(best):
            return False
        if piv != k:
            for j in range(n):
                tmp = a[k, j]
                a[k, j] = a[piv, j]
                a[piv, j] = tmp
            tmp = x[k]
            x[k] = x[piv]
            x[piv] = tmp
        for i in range(k + 1, n):
            factor = a[i, k] / a[k, k]
            for j in range(k, n):
                a[i, j] -= factor * a[k, j]
            x[i] -= factor * x[k]
    for k in range(n - 1, -1, -1):
        tmp = x[k]
        for j in range(k + 1, n):
            tmp -= a[k, j] * x[j]
        x[k] = tmp / a[k, k]
    return True


cdef bint _all_finite(double[::1] v) noexcept nogil:
    cdef Py_ssize_t i
    for i in range(v.shape[0]):
        if not isfinite(v[i]):
            return False
    return True


def orthant_sphere_select(x):
    cdef cnp.ndarray[double, ndim=1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] out = np.empty_like(xv)
    _select(xv, out)
    return out


def pgm_loop(m, x0, double step, int max_iter, double rel_tol):
    cdef cnp.ndarray[double, ndim=2] mm = np.ascontiguousarray(m, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] x = np.array(x0, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0]
    cdef cnp.ndarray[double, ndim=1] grad = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] xn = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] res = np.empty(max_iter)
    cdef double[:, ::1] mv = mm
    cdef double[::1] xv = x, gv = grad, xnv = xn, rv = res
    cdef int k
    cdef Py_ssize_t i
    cdef double r
    for k in range(1, max_iter + 1):
        _matvec(mv, xv, gv)
        for i in range(n):
            gv[i] = xv[i] - step * gv[i]
        _select(gv, xnv)
        r = _rel_step(xnv, xv)
        rv[k - 1] = r
        for i in range(n):
            xv[i] = xnv[i]
        if r < rel_tol:
            return x, k, True, res[:k].copy()
    return x, max_iter, False, res.copy()


def fista_loop(m, x0, double step, int max_iter, double rel_tol):
    cdef cnp.ndarray[double, ndim=2] mm = np.ascontiguousarray(m, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] x = np.array(x0, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0]
    cdef cnp.ndarray[double, ndim=1] y = x.copy()
    cdef cnp.ndarray[double, ndim=1] grad = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] xn = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] res = np.empty(max_iter)
    cdef double[:, ::1] mv = mm
    cdef double[::1] xv = x, yv = y, gv = grad, xnv = xn, rv = res
    cdef int k
    cdef Py_ssize_t i
    cdef double r, t = 1.0, tn, w
    for k in range(1, max_iter + 1):
        _matvec(mv, yv, gv)
        for i in range(n):
            gv[i] = yv[i] - step * gv[i]
        _select(gv, xnv)
        tn = (1.0 + sqrt(1.0 + 4.0 * t * t)) / 2.0
        w = (t - 1.0) / tn
        for i in range(n):
            yv[i] = xnv[i] + w * (xnv[i] - xv[i])
        r = _rel_step(xnv, xv)
        rv[k - 1] = r
        for i in range(n):
            xv[i] = xnv[i]
        t = tn
        if r < rel_tol:
            return x, k, True, res[:k].copy()
    return x, max_iter, False, res.copy()


def lange_loop(m, x0, double rho_init, double rho_growth, double rho_cap,
               int max_iter, double rel_tol):
    cdef cnp.ndarray[double, ndim=2] mm = np.ascontiguousarray(m, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] x = np.array(x0, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0]
    cdef cnp.ndarray[double, ndim=2] work = np.empty((n, n))
    cdef cnp.ndarray[double, ndim=1] p = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] rhs = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] xn = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] res = np.empty(max_iter)
    cdef double[:, ::1] mv = mm, wv = work
    cdef double[::1] xv = x, pv = p, bv = rhs, xnv = xn, rv = res
    cdef int k
    cdef Py_ssize_t i, j
    cdef double r, rho = rho_init
    cdef double bump = rho_growth if rho_growth > 1.0 else 2.0
    cdef bint ok
    for k in range(1, max_iter + 1):
        _select(xv, pv)
        for i in range(n):
            for j in range(n):
                wv[i, j] = mv[i, j]
            wv[i, i] += rho
            bv[i] = rho * pv[i]
        ok = _solve(wv, bv, xnv)
        if not ok:
            rho *= bump
            for i in range(n):
                for j in range(n):
                    wv[i, j] = mv[i, j]
                wv[i, i] += rho
                bv[i] = rho * pv[i]
            ok = _solve(wv, bv, xnv)
            if not ok:
                return x, k, False, res[:k - 1].copy()
        r = _rel_step(xnv, xv)
        rv[k - 1] = r
        for i in range(n):
            xv[i] = xnv[i]
        rho = min(rho * rho_growth, rho_cap)
        if not _all_finite(xv):
            return p, k, False, res[:k].copy()
        if r < rel_tol:
            return x, k, True, res[:k].copy()
    return x, max_iter, False, res.copy()


def dr_loop(inv_mat, z0, int max_iter, double rel_tol):
    cdef cnp.ndarray[double, ndim=2] inv = np.ascontiguousarray(inv_mat, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] z = np.array(z0, dtype=np.float64)
    cdef Py_ssize_t n = z.shape[0]
    cdef cnp.ndarray[double, ndim=1] p = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] p_prev = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] refl = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] q = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] res = np.empty(max_iter)
    cdef double[:, ::1] iv = inv
    cdef double[::1] zv = z, pv = p, ppv = p_prev, fv = refl, qv = q, rv = res
    cdef int k, nres = 0
    cdef Py_ssize_t i
    cdef double r
    cdef bint have_prev = False
    for k in range(1, max_iter + 1):
        _select(zv, pv)
        for i in range(n):
            fv[i] = 2.0 * pv[i] - zv[i]
        _matvec(iv, fv, qv)
        for i in range(n):
            zv[i] += qv[i] - pv[i]
        if have_prev:
            r = _rel_step(pv, ppv)
            rv[nres] = r
            nres += 1
            if r < rel_tol:
                return p, k, True, res[:nres].copy()
        for i in range(n):
            ppv[i] = pv[i]
        have_prev = True
        if not _all_finite(zv):
            return p, k, False, res[:nres].copy()
    return p, max_iter, False, res[:nres].copy()


def li_pong_loop(inv_mat, z0, int max_iter, double rel_tol):
    cdef cnp.ndarray[double, ndim=2] inv = np.ascontiguousarray(inv_mat, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] z = np.array(z0, dtype=np.float64)
    cdef Py_ssize_t n = z.shape[0]
    cdef cnp.ndarray[double, ndim=1] y = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] y_prev = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] refl = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] q = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] res = np.empty(max_iter)
    cdef double[:, ::1] iv = inv
    cdef double[::1] zv = z, yv = y, ypv = y_prev, fv = refl, qv = q, rv = res
    cdef int k, nres = 0
    cdef Py_ssize_t i
    cdef double r
    cdef bint have_prev = False
    for k in range(1, max_iter + 1):
        _matvec(iv, zv, yv)
        for i in range(n):
            fv[i] = 2.0 * yv[i] - zv[i]
        _select(fv, qv)
        for i in range(n):
            zv[i] += qv[i] - yv[i]
        if have_prev:
            r = _rel_step(yv, ypv)
            rv[nres] = r
            nres += 1
            if r < rel_tol:
                return y, k, True, res[:nres].copy()
        for i in range(n):
            ypv[i] = yv[i]
        have_prev = True
        if not _all_finite(zv):
            return y, k, False, res[:nres].copy()
    return y, max_iter, False, res[:nres].copy()
