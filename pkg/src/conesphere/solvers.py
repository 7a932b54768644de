"""Five first-order methods for quadratic minimization over the orthant-sphere.

All methods minimize ``f(x) = (1/2) <x, Mx>`` over the nonnegative orthant
intersected with the unit sphere, share one relative-step stopping rule,
and report a :class:`SolverTrace` whose final point always lies on the
constraint set.  Set-valued projections inside the iterations resolve to
the canonical lowest-index selection, so every run is deterministic.

The inner loops are delegated to the active kernel backend (compiled when
available, pure numpy otherwise).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .linalg import as_sym_matrix, as_vector, eig_sym, operator_norm

ALGORITHM_IDS = ("fista", "pgm", "lange", "li_pong", "dr")

# Penalty growth for the proximal-distance method stops at this cap.
LANGE_RHO_CAP = 1e8

_MAX_GAMMA_HALVINGS = 60


@dataclass(frozen=True)
class QuadraticObjective:
    """Quadratic form ``x -> (1/2) <x, Mx>`` with its cached Lipschitz constant."""

    matrix: np.ndarray
    lipschitz: float

    @classmethod
    def from_matrix(cls, m) -> "QuadraticObjective":
        m = as_sym_matrix(m)
        return cls(matrix=m, lipschitz=operator_norm(m))

    def value(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return 0.5 * float(x @ (self.matrix @ x))

    def gradient(self, x) -> np.ndarray:
        return self.matrix @ np.asarray(x, dtype=float)


@dataclass(frozen=True)
class SolverConfig:
    """Shared solver knobs.

    ``step_scale`` and ``dr_gamma`` default per method (``None`` here):
    step scale 1.0 for PGM/FISTA and 0.5 for the splitting variants;
    the plain splitting method uses the classical unit prox step while
    the conservative variant caps its step at ``step_scale / L``.
    """

    max_iter: int = 1000
    rel_tol: float = 1e-8
    step_scale: float | None = None
    dr_gamma: float | None = None
    lange_rho_init: float = 1.0
    lange_rho_growth: float = 1.2
    seed: int = 0

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be positive")
        if self.step_scale is not None and not (0.0 < self.step_scale <= 1.0):
            raise ValueError("step_scale must lie in (0, 1]")
        if self.dr_gamma is not None and self.dr_gamma <= 0:
            raise ValueError("dr_gamma must be positive")
        if self.lange_rho_init <= 0:
            raise ValueError("lange_rho_init must be positive")
        if self.lange_rho_growth < 1.0:
            raise ValueError("lange_rho_growth must be at least 1")


@dataclass(frozen=True)
class SolverTrace:
    final_x: np.ndarray
    final_fval: float
    iterations: int
    converged: bool
    residual_history: tuple = field(repr=False, default=())


def stop_rule(x_n, x_prev, rel_tol: float) -> bool:
    """Relative-step stopping test ``||x_n - x_prev|| / max(||x_prev||, 1) < tol``."""
    x_n = as_vector(x_n)
    x_prev = as_vector(x_prev)
    if x_n.shape != x_prev.shape:
        raise ValueError("dimension mismatch")
    return float(np.linalg.norm(x_n - x_prev)) / max(float(np.linalg.norm(x_prev)), 1.0) < rel_tol


def default_start(n: int) -> np.ndarray:
    """Barycenter of the simplex scaled onto the sphere."""
    return np.full(n, 1.0 / math.sqrt(n))


def random_starts(n: int, count: int, seed) -> list:
    """Draws uniform directions on the constraint set (normalized |N(0,1)|)."""
    rng = np.random.default_rng(seed)
    starts = []
    for _ in range(count):
        v = np.abs(rng.standard_normal(n))
        nv = float(np.linalg.norm(v))
        if nv == 0.0:
            v[0] = 1.0
            nv = 1.0
        starts.append(v / nv)
    return starts


def _select(x):
    return _kernels.active().orthant_sphere_select(x)


def _entry_point(x0) -> np.ndarray:
    return _select(as_vector(x0))


def _trace(obj: QuadraticObjective, x, iters, converged, residuals) -> SolverTrace:
    return SolverTrace(
        final_x=x,
        final_fval=obj.value(x),
        iterations=int(iters),
        converged=bool(converged),
        residual_history=tuple(float(r) for r in residuals),
    )


def _gradient_step(cfg: SolverConfig, lipschitz: float) -> float:
    scale = cfg.step_scale if cfg.step_scale is not None else 1.0
    return scale / lipschitz if lipschitz > 0 else 1.0


def pgm(obj: QuadraticObjective, x0, cfg: SolverConfig | None = None) -> SolverTrace:
    """Projected gradient method with step ``step_scale / L``."""
    cfg = cfg or SolverConfig()
    x0c = _entry_point(x0)
    x, iters, conv, res = _kernels.active().pgm_loop(
        obj.matrix, x0c, _gradient_step(cfg, obj.lipschitz), cfg.max_iter, cfg.rel_tol
    )
    return _trace(obj, x, iters, conv, res)


def fista(obj: QuadraticObjective, x0, cfg: SolverConfig | None = None) -> SolverTrace:
    """Accelerated projected gradient with the standard momentum sequence.

    Plain scheme: no restarts, no monotonicity safeguard.
    """
    cfg = cfg or SolverConfig()
    x0c = _entry_point(x0)
    x, iters, conv, res = _kernels.active().fista_loop(
        obj.matrix, x0c, _gradient_step(cfg, obj.lipschitz), cfg.max_iter, cfg.rel_tol
    )
    return _trace(obj, x, iters, conv, res)


def lange_proximal_distance(obj: QuadraticObjective, x0, cfg: SolverConfig | None = None) -> SolverTrace:
    """Proximal-distance scheme: quadratic plus a growing squared-distance penalty.

    Each iteration solves ``(M + rho I) x = rho P_C(x_k)`` and multiplies
    ``rho`` by the growth factor (capped at 1e8).  The reported point is
    the projection of the last iterate onto the constraint set.
    """
    cfg = cfg or SolverConfig()
    x0c = _entry_point(x0)
    x, iters, conv, res = _kernels.active().lange_loop(
        obj.matrix,
        x0c,
        cfg.lange_rho_init,
        cfg.lange_rho_growth,
        LANGE_RHO_CAP,
        cfg.max_iter,
        cfg.rel_tol,
    )
    return _trace(obj, _select(x), iters, conv, res)


def _resolvent(matrix: np.ndarray, gamma: float) -> np.ndarray:
    n = matrix.shape[0]
    return np.linalg.inv(np.eye(n) + gamma * matrix)


def dr(obj: QuadraticObjective, x0, cfg: SolverConfig | None = None) -> SolverTrace:
    """Plain Douglas-Rachford splitting with the classical unit prox step.

    The projection onto the constraint set is applied first and the
    quadratic's resolvent ``(I + gamma M)^{-1}`` enters through the
    reflection.  ``gamma`` defaults to 1 and is halved (at most 60 times)
    only if ``I + gamma M`` is numerically singular; on an indefinite
    quadratic the iteration may therefore stall at a non-minimizing fixed
    point, which is the known behavior of the unmodified method.
    """
    cfg = cfg or SolverConfig()
    gamma = cfg.dr_gamma if cfg.dr_gamma is not None else 1.0
    eigenvalues = eig_sym(obj.matrix).eigenvalues
    for _ in range(_MAX_GAMMA_HALVINGS):
        margin = float(np.min(np.abs(1.0 + gamma * eigenvalues)))
        if margin > 1e-12 * max(1.0, gamma * obj.lipschitz):
            break
        gamma /= 2.0
    else:
        raise ValueError("could not find gamma making I + gamma*M invertible")
    z0 = _entry_point(x0)
    p, iters, conv, res = _kernels.active().dr_loop(
        _resolvent(obj.matrix, gamma), z0, cfg.max_iter, cfg.rel_tol
    )
    return _trace(obj, _select(p), iters, conv, res)


def li_pong_dr(obj: QuadraticObjective, x0, cfg: SolverConfig | None = None) -> SolverTrace:
    """Douglas-Rachford variant with the smooth term in the first prox slot.

    The resolvent of the quadratic is applied first, the projection enters
    through the reflection, and the stepsize is capped at
    ``step_scale / L`` (with ``I + gamma M`` kept positive definite), the
    conservative regime under which this ordering is known to converge.
    """
    cfg = cfg or SolverConfig()
    lipschitz = obj.lipschitz
    gamma = cfg.dr_gamma if cfg.dr_gamma is not None else 0.5 / max(lipschitz, 1.0)
    scale = cfg.step_scale if cfg.step_scale is not None else 0.5
    if lipschitz > 0:
        gamma = min(gamma, scale / lipschitz)
    lam_min = float(eig_sym(obj.matrix).eigenvalues[-1])
    for _ in range(_MAX_GAMMA_HALVINGS):
        if 1.0 + gamma * lam_min > 0:
            break
        gamma /= 2.0
    else:
        raise ValueError("could not find gamma making I + gamma*M positive definite")
    z0 = _entry_point(x0)
    y, iters, conv, res = _kernels.active().li_pong_loop(
        _resolvent(obj.matrix, gamma), z0, cfg.max_iter, cfg.rel_tol
    )
    return _trace(obj, _select(y), iters, conv, res)


_SOLVERS = {
    "pgm": pgm,
    "fista": fista,
    "lange": lange_proximal_distance,
    "dr": dr,
    "li_pong": li_pong_dr,
}


def run(algorithm: str, obj: QuadraticObjective, x0, cfg: SolverConfig | None = None) -> SolverTrace:
    """Dispatch a solver by its identifier (see ``ALGORITHM_IDS``)."""
    try:
        solver = _SOLVERS[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}") from None
    return solver(obj, x0, cfg)
