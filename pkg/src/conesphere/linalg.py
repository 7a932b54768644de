"""Dense real vectors and symmetric matrices with a Jacobi eigensolver.

Vectors are 1-D float64 numpy arrays and symmetric matrices are square
float64 arrays whose (i, j) and (j, i) entries are bit-identical.  The
validation helpers below are the single entry point through which every
other module admits user data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Inputs more asymmetric than this (relative to max(1, ||A||_F)) are
# rejected instead of silently symmetrized.
ASYMMETRY_RTOL = 1e-9

# Cyclic Jacobi sweeps stop once the off-diagonal Frobenius norm drops
# below this multiple of ||A||_F, with a hard cap on sweeps.
_JACOBI_RTOL = 1e-14
_JACOBI_MAX_SWEEPS = 50

# Eigenvector sign convention: the first component larger than this in
# magnitude is made nonnegative.
_SIGN_EPS = 1e-12


def as_vector(x) -> np.ndarray:
    """Validate and return ``x`` as a finite 1-D float64 array."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1 or v.size < 1:
        raise ValueError("expected a 1-D vector with at least one entry")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def as_sym_matrix(a) -> np.ndarray:
    """Validate ``a`` as symmetric and return its exactly symmetric storage.

    Asymmetry up to ``ASYMMETRY_RTOL * max(1, ||A||_F)`` is repaired by
    averaging with the transpose; anything larger raises ``ValueError``.
    """
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError("expected a square matrix")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    scale = max(1.0, float(np.linalg.norm(m)))
    gap = float(np.max(np.abs(m - m.T)))
    if gap > ASYMMETRY_RTOL * scale:
        raise ValueError(f"matrix is not symmetric (max |A_ij - A_ji| = {gap:.3e})")
    return (m + m.T) / 2.0


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues sorted descending with a matching orthonormal basis."""

    eigenvalues: np.ndarray
    basis: np.ndarray  # columns are eigenvectors, basis.T @ basis = I

    def reconstruct(self) -> np.ndarray:
        b = self.basis
        return (b * self.eigenvalues) @ b.T


def eig_sym(a) -> EigenDecomposition:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Deterministic for identical input: rotations are applied in a fixed
    cyclic order, eigenvalues are sorted descending with ties broken by
    their pre-sort position, and each eigenvector's first component of
    magnitude above 1e-12 is made nonnegative.
    """
    b = as_sym_matrix(a).copy()
    n = b.shape[0]
    v = np.eye(n)
    norm_a = float(np.linalg.norm(b))
    threshold = _JACOBI_RTOL * norm_a

    for _ in range(_JACOBI_MAX_SWEEPS):
        # Sum the off-diagonal squares directly; subtracting the diagonal
        # from the total cancels catastrophically near convergence.
        strict = b.copy()
        np.fill_diagonal(strict, 0.0)
        if float(np.linalg.norm(strict)) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = b[p, q]
                diff = b[q, q] - b[p, p]
                if abs(apq) < 1e-300 * max(1.0, abs(diff)):
                    b[p, q] = 0.0
                    b[q, p] = 0.0
                    continue
                if abs(diff) > 1e150 * abs(apq):
                    t = apq / diff  # small-angle limit of the formula below
                else:
                    theta = diff / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (
                        abs(theta) + math.sqrt(theta * theta + 1.0)
                    )
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                row_p = b[p, :].copy()
                row_q = b[q, :].copy()
                b[p, :] = c * row_p - s * row_q
                b[q, :] = s * row_p + c * row_q
                col_p = b[:, p].copy()
                col_q = b[:, q].copy()
                b[:, p] = c * col_p - s * col_q
                b[:, q] = s * col_p + c * col_q
                b[p, q] = 0.0
                b[q, p] = 0.0

                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q

    diag = np.diag(b).copy()
    order = np.argsort(-diag, kind="stable")
    eigenvalues = diag[order]
    basis = v[:, order].copy()
    for j in range(n):
        col = basis[:, j]
        lead = np.nonzero(np.abs(col) > _SIGN_EPS)[0]
        if lead.size and col[lead[0]] < 0.0:
            basis[:, j] = -col
    return EigenDecomposition(eigenvalues=eigenvalues, basis=basis)


def operator_norm(m) -> float:
    """Largest eigenvalue magnitude of a symmetric matrix."""
    return float(np.max(np.abs(eig_sym(m).eigenvalues)))


def min_eigenvalue(m) -> float:
    """Smallest eigenvalue of a symmetric matrix."""
    return float(eig_sym(m).eigenvalues[-1])


def trace_inner(a, b) -> float:
    """Trace inner product tr(AB) of two symmetric matrices."""
    am = as_sym_matrix(a)
    bm = as_sym_matrix(b)
    if am.shape != bm.shape:
        raise ValueError("dimension mismatch")
    return float(np.sum(am * bm))


def positive_part(x) -> np.ndarray:
    """Componentwise maximum with zero."""
    return np.maximum(as_vector(x), 0.0)
