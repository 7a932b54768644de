"""Projectors onto cones, balls, spheres, and their intersections.

Every operation returns a :class:`ProjectionOutcome` carrying a canonical
nearest point, a cardinality tag (the nearest-point set of a nonconvex
target can be a finite set or a continuum), and the distance to the target.
Set-valued outcomes always come with a deterministic canonical selection:
the lowest-index generator, the first basis vector, or the leading
eigenvector column, so repeated runs produce identical results.

Points of the product space H (+) R are passed as a ``(vector, scalar)``
pair and packed into a single array (scalar last) inside outcomes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import as_sym_matrix, as_vector, eig_sym
from .nnls import nnls

UNIQUE = "Unique"
FINITE = "FiniteSet"
CONTINUUM = "Continuum"

# Eigenvalue-gap tolerance used to decide multiplicity of a leading
# eigenvalue, relative to max(1, ||A||_F).
MULTIPLICITY_RTOL = 1e-9

# Generator points closer than this are considered duplicates.
_DEDUP_TOL = 1e-12


class PolarCaseNeedsGenerators(ValueError):
    """Raised when a sphere intersection needs generator structure.

    Projecting a point of the polar cone (but not of the orthogonal
    complement) onto cone-intersect-sphere requires knowing a generating
    set of the cone; a bare projector handle is not enough.  Callers
    should use the generator-aware operations instead.
    """


def kappa_tolerance(x_norm: float, rho: float) -> float:
    """Absolute tolerance for classifying the sign of the support value."""
    return 1e-12 * max(1.0, x_norm * rho)


@dataclass(frozen=True)
class ProjectionOutcome:
    """Canonical nearest point plus the cardinality of the nearest-point set.

    ``points`` lists the members of a finite outcome (canonical first);
    ``description`` labels a continuum; ``max_inner`` is the maximal inner
    product with the target set when the projector computes it anyway.
    """

    canonical: np.ndarray
    cardinality: str
    distance: float
    points: tuple | None = None
    description: str | None = None
    max_inner: float | None = None


def _unique(canonical, distance) -> ProjectionOutcome:
    return ProjectionOutcome(canonical, UNIQUE, float(distance))


def _finite(points, distance, **kw) -> ProjectionOutcome:
    return ProjectionOutcome(points[0], FINITE, float(distance), points=tuple(points), **kw)


def _continuum(canonical, description, distance, **kw) -> ProjectionOutcome:
    return ProjectionOutcome(canonical, CONTINUUM, float(distance), description=description, **kw)


# --------------------------------------------------------------------------
# Cone descriptions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class OrthonormalCone:
    """Cone generated by a finite orthonormal set (rows of ``generators``)."""

    generators: np.ndarray

    def __post_init__(self):
        g = np.atleast_2d(np.asarray(self.generators, dtype=float))
        if g.size == 0:
            raise ValueError("at least one generator is required")
        gram = g @ g.T
        if np.max(np.abs(gram - np.eye(g.shape[0]))) > 1e-10:
            raise ValueError("generators are not orthonormal")
        object.__setattr__(self, "generators", g)

    @property
    def dim(self) -> int:
        return self.generators.shape[1]


@dataclass(frozen=True)
class FiniteGeneratorCone:
    """Cone generated by finitely many points of a common sphere.

    All generators must have norm ``radius``; the intersection with the
    sphere of that radius then has the closed-form projector below.
    """

    generators: np.ndarray
    radius: float

    def __post_init__(self):
        g = np.atleast_2d(np.asarray(self.generators, dtype=float))
        if g.size == 0:
            raise ValueError("at least one generator is required")
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        norms = np.linalg.norm(g, axis=1)
        if np.max(np.abs(norms - self.radius)) > 1e-10:
            raise ValueError("every generator must have norm equal to radius")
        object.__setattr__(self, "generators", g)


@dataclass(frozen=True)
class LorentzSpec:
    """Aperture ``alpha`` of the ice-cream cone and sphere radius ``rho``."""

    alpha: float
    rho: float = 1.0

    def __post_init__(self):
        if self.alpha <= 0 or self.rho <= 0:
            raise ValueError("alpha and rho must be positive")

    @property
    def slice_radius(self) -> float:
        """Radius of the cross-section slice whose conical hull is the cone."""
        return self.rho * self.alpha / math.sqrt(1.0 + self.alpha * self.alpha)


# --------------------------------------------------------------------------
# Elementary projectors
# --------------------------------------------------------------------------


def proj_ball(x, rho: float) -> ProjectionOutcome:
    """Project onto the closed ball of radius ``rho`` centered at 0."""
    x = as_vector(x)
    if rho <= 0:
        raise ValueError("rho must be positive")
    nx = float(np.linalg.norm(x))
    p = (rho / max(nx, rho)) * x
    return _unique(p, max(nx - rho, 0.0))


def proj_sphere(x, rho: float) -> ProjectionOutcome:
    """Project onto the sphere of radius ``rho``; the origin sees the whole sphere."""
    x = as_vector(x)
    if rho <= 0:
        raise ValueError("rho must be positive")
    nx = float(np.linalg.norm(x))
    if nx == 0.0:
        e1 = np.zeros_like(x)
        e1[0] = rho
        return _continuum(e1, "entire sphere", rho)
    return _unique((rho / nx) * x, abs(nx - rho))


def proj_ray(x, direction) -> ProjectionOutcome:
    """Project onto the ray spanned by a unit vector."""
    x = as_vector(x)
    e = as_vector(direction)
    if abs(np.linalg.norm(e) - 1.0) > 1e-10:
        raise ValueError("direction must be a unit vector")
    c = max(float(x @ e), 0.0)
    d = math.sqrt(max(float(x @ x) - c * c, 0.0))
    return _unique(c * e, d)


def proj_orthonormal_cone(x, cone: OrthonormalCone) -> ProjectionOutcome:
    """Project onto the cone of nonnegative combinations of orthonormal vectors.

    The projection keeps the nonnegative coefficients against each
    generator and drops the rest.
    """
    x = as_vector(x)
    g = cone.generators
    coeffs = np.maximum(g @ x, 0.0)
    p = g.T @ coeffs
    d = math.sqrt(max(float(x @ x) - float(coeffs @ coeffs), 0.0))
    return _unique(p, d)


def proj_polar_orthonormal_cone(x, cone: OrthonormalCone) -> ProjectionOutcome:
    """Project onto the polar of an orthonormally generated cone."""
    x = as_vector(x)
    g = cone.generators
    coeffs = np.maximum(g @ x, 0.0)
    p = x - g.T @ coeffs
    return _unique(p, math.sqrt(float(coeffs @ coeffs)))


# --------------------------------------------------------------------------
# Cone intersected with a ball
# --------------------------------------------------------------------------


def proj_cone_cap_ball(x, rho: float, cone_projector) -> ProjectionOutcome:
    """Project onto (cone intersect ball) given an exact cone projector.

    Equals the ball projector composed after the cone projector; the
    intersection is convex so the outcome is always unique.
    """
    x = as_vector(x)
    if rho <= 0:
        raise ValueError("rho must be positive")
    pk = np.asarray(cone_projector(x), dtype=float)
    npk = float(np.linalg.norm(pk))
    p = (rho / max(npk, rho)) * pk
    dk2 = float(np.sum((x - pk) ** 2))
    d = math.sqrt(dk2 + max(npk - rho, 0.0) ** 2)
    return _unique(p, d)


def composed_ball_then_cone(x, rho: float, cone_projector) -> np.ndarray:
    """Apply the ball projector first, then the cone projector.

    Collapses to ``(rho / max(||x||, rho)) * P_K x``; in general this is
    not the projector onto the intersection (the order matters).
    """
    x = as_vector(x)
    if rho <= 0:
        raise ValueError("rho must be positive")
    pk = np.asarray(cone_projector(x), dtype=float)
    return (rho / max(float(np.linalg.norm(x)), rho)) * pk


# --------------------------------------------------------------------------
# Cone intersected with a sphere
# --------------------------------------------------------------------------


def polar_membership_from_projector(cone_projector, tol: float = 1e-10):
    """Build a polar/orthogonal membership test from a cone projector.

    A point lies in the polar cone exactly when its cone projection
    vanishes, and in the orthogonal complement when the projections of
    both the point and its negation vanish.
    """

    def test(x):
        x = as_vector(x)
        scale = tol * max(1.0, float(np.linalg.norm(x)))
        in_polar = float(np.linalg.norm(cone_projector(x))) <= scale
        in_perp = in_polar and float(np.linalg.norm(cone_projector(-x))) <= scale
        return in_polar, in_perp

    return test


def _probe_unit_direction(projector, dim: int) -> np.ndarray:
    for j in range(dim):
        e = np.zeros(dim)
        e[j] = 1.0
        w = np.asarray(projector(e), dtype=float)
        nw = float(np.linalg.norm(w))
        if nw > 1e-12:
            return w / nw
    raise ValueError("could not find a nonzero direction in the target set")


def proj_cone_cap_sphere_generic(x, rho: float, cone_projector, polar_membership) -> ProjectionOutcome:
    """Project onto (cone intersect sphere) using only a projector handle.

    Outside the polar cone the projection is the rescaled cone projection.
    On the orthogonal complement every point of the intersection is
    nearest.  In between (polar but not orthogonal) the answer depends on
    a generating set, which a bare projector does not expose; that case
    raises :class:`PolarCaseNeedsGenerators`.
    """
    x = as_vector(x)
    if rho <= 0:
        raise ValueError("rho must be positive")
    in_polar, in_perp = polar_membership(x)
    if in_perp:
        u = _probe_unit_direction(cone_projector, x.size)
        d = math.sqrt(float(x @ x) + rho * rho)
        return _continuum(rho * u, "entire cone-sphere intersection", d)
    if in_polar:
        raise PolarCaseNeedsGenerators(
            "point lies in the polar cone; use a generator-aware projector"
        )
    pk = np.asarray(cone_projector(x), dtype=float)
    npk = float(np.linalg.norm(pk))
    p = (rho / npk) * pk
    dk2 = float(np.sum((x - pk) ** 2))
    return _unique(p, math.sqrt(dk2 + (npk - rho) ** 2))


def proj_fg_cone_cap_sphere(x, cone: FiniteGeneratorCone) -> ProjectionOutcome:
    """Project onto (finitely generated cone intersect sphere).

    The sign of the largest inner product against the generators selects
    one of three regimes: rescaled cone projection, a spherical face, or
    the best generators themselves.  The cone projection is computed by
    nonnegative least squares over the generators.
    """
    x = as_vector(x)
    g = cone.generators
    rho = cone.radius
    inner = g @ x
    kappa = float(np.max(inner))
    tau = kappa_tolerance(float(np.linalg.norm(x)), rho)
    active = np.where(inner >= kappa - tau)[0]

    if kappa > tau:
        coeffs, _ = nnls(g.T, x)
        pk = g.T @ coeffs
        npk = float(np.linalg.norm(pk))
        p = (rho / npk) * pk
        return _unique(p, float(np.linalg.norm(x - p)))

    canonical = g[active[0]].copy()
    d = float(np.linalg.norm(x - canonical))
    if abs(kappa) <= tau:
        return _continuum(
            canonical, "sphere cap spanned by the maximizing generators", d
        )
    points = [g[i].copy() for i in active]
    kept = []
    for p in points:
        if all(np.linalg.norm(p - q) > _DEDUP_TOL for q in kept):
            kept.append(p)
    return _finite(kept, d)


def proj_orthant_cap_sphere(x) -> ProjectionOutcome:
    """Project onto the nonnegative orthant intersected with the unit sphere.

    With a positive maximum entry the projection normalizes the positive
    part; otherwise the nearest points sit among the coordinate axes that
    attain the maximum entry.
    """
    x = as_vector(x)
    kappa = float(np.max(x))
    tau = kappa_tolerance(float(np.linalg.norm(x)), 1.0)
    if kappa > tau:
        xp = np.maximum(x, 0.0)
        p = xp / float(np.linalg.norm(xp))
        return _unique(p, float(np.linalg.norm(x - p)))
    active = np.where(x >= kappa - tau)[0]
    canonical = np.zeros_like(x)
    canonical[active[0]] = 1.0
    d = float(np.linalg.norm(x - canonical))
    if abs(kappa) <= tau:
        return _continuum(
            canonical, "unit sphere of the coordinates attaining the maximum", d
        )
    points = []
    for i in active:
        e = np.zeros_like(x)
        e[i] = 1.0
        points.append(e)
    return _finite(points, d)


def orthant_sphere_select(x) -> np.ndarray:
    """Canonical selection of the orthant-sphere projector (solver hot path)."""
    return proj_orthant_cap_sphere(x).canonical


def proj_circle(x, rho: float, subspace_projector, unit_vector=None) -> ProjectionOutcome:
    """Project onto (subspace intersect sphere), a generalized circle.

    ``unit_vector`` optionally supplies the continuum witness used when
    the input is orthogonal to the subspace; otherwise one is derived by
    probing the projector with basis vectors.
    """
    x = as_vector(x)
    if rho <= 0:
        raise ValueError("rho must be positive")
    pv = np.asarray(subspace_projector(x), dtype=float)
    npv = float(np.linalg.norm(pv))
    if npv > 1e-12 * max(1.0, float(np.linalg.norm(x))):
        p = (rho / npv) * pv
        return _unique(p, float(np.linalg.norm(x - p)))
    if unit_vector is not None:
        u = as_vector(unit_vector)
        u = u / float(np.linalg.norm(u))
    else:
        u = _probe_unit_direction(subspace_projector, x.size)
    d = math.sqrt(float(x @ x) + rho * rho)
    return _continuum(rho * u, "circle in the subspace", d)


# --------------------------------------------------------------------------
# Product space H (+) R: sphere slices and the Lorentz cone
# --------------------------------------------------------------------------


def _pack(x: np.ndarray, xi: float) -> np.ndarray:
    return np.append(x, xi)


def max_inner_sphere_slice(x, xi: float, alpha: float, beta: float) -> float:
    """Maximum inner product of ``(x, xi)`` with the slice sphere(beta) x {alpha}."""
    x = as_vector(x)
    if beta <= 0:
        raise ValueError("beta must be positive")
    return beta * float(np.linalg.norm(x)) + xi * alpha


def proj_sphere_slice(x, xi: float, alpha: float, beta: float) -> ProjectionOutcome:
    """Project onto the horizontal slice sphere(beta) x {alpha}."""
    x = as_vector(x)
    if beta <= 0:
        raise ValueError("beta must be positive")
    nx = float(np.linalg.norm(x))
    if nx == 0.0:
        w = np.zeros_like(x)
        w[0] = beta
        d = math.hypot(beta, xi - alpha)
        return _continuum(_pack(w, alpha), "entire sphere slice", d)
    p = _pack((beta / nx) * x, alpha)
    return _unique(p, math.hypot(nx - beta, xi - alpha))


def proj_lorentz(x, xi: float, alpha: float):
    """Project onto the ice-cream cone ``||x|| <= alpha * xi``.

    Returns the ``(vector, scalar)`` pair.  Points inside the cone are
    fixed, points inside the negative polar cone map to the apex, and the
    rest land on the cone boundary by the standard rescaling.
    """
    x = as_vector(x)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    nx = float(np.linalg.norm(x))
    if nx <= alpha * xi:
        return x.copy(), float(xi)
    if nx <= -xi / alpha:
        return np.zeros_like(x), 0.0
    t = (alpha * nx + xi) / (1.0 + alpha * alpha)
    return (t * alpha / nx) * x, t


def proj_lorentz_cap_sphere(x, xi: float, spec: LorentzSpec) -> ProjectionOutcome:
    """Project onto (ice-cream cone intersect sphere of radius rho).

    Four regimes: points in the cone's interior rescale radially; generic
    points land on the single boundary point of the intersection circle
    nearest to them; points on the negative axis see the whole circle;
    the origin sees the entire intersection.
    """
    x = as_vector(x)
    alpha, rho = spec.alpha, spec.rho
    beta = spec.slice_radius
    nx = float(np.linalg.norm(x))
    point = _pack(x, xi)

    def witness() -> np.ndarray:
        w = np.zeros_like(x)
        w[0] = beta
        return _pack(w, beta / alpha)

    if nx <= alpha * xi and xi > 0:
        nb = float(np.linalg.norm(point))
        p = (rho / nb) * point
        return _unique(p, float(np.linalg.norm(point - p)))
    if nx > max(alpha * xi, -xi / alpha) or (nx > 0 and nx <= -xi / alpha):
        head = (rho / math.sqrt(1.0 + alpha * alpha)) * (alpha / nx) * x
        tail = rho / math.sqrt(1.0 + alpha * alpha)
        p = _pack(head, tail)
        return _unique(p, float(np.linalg.norm(point - p)))
    if nx == 0.0 and xi < 0:
        p = witness()
        return _continuum(p, "circle at the cone boundary", float(np.linalg.norm(point - p)))
    p = witness()
    return _continuum(p, "entire cone-sphere intersection", float(np.linalg.norm(point - p)))


# --------------------------------------------------------------------------
# Symmetric-matrix sets
# --------------------------------------------------------------------------


def _sym(b: np.ndarray) -> np.ndarray:
    return (b + b.T) / 2.0


def _frob(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def proj_psd(a) -> np.ndarray:
    """Project onto the positive semidefinite cone (trace inner product)."""
    a = as_sym_matrix(a)
    dec = eig_sym(a)
    lam_plus = np.maximum(dec.eigenvalues, 0.0)
    return _sym((dec.basis * lam_plus) @ dec.basis.T)


def _leading_multiplicity(eigenvalues: np.ndarray, norm_a: float) -> int:
    gap = MULTIPLICITY_RTOL * max(1.0, norm_a)
    return int(np.sum(eigenvalues >= eigenvalues[0] - gap))


def proj_rank1_sphere(a, rho: float) -> ProjectionOutcome:
    """Project onto the rank-one PSD matrices of Frobenius norm ``rho``.

    The nearest points are built from leading eigenvectors; the maximal
    inner product with the set, ``rho * lambda_1``, rides along in
    ``max_inner``.
    """
    a = as_sym_matrix(a)
    if rho <= 0:
        raise ValueError("rho must be positive")
    dec = eig_sym(a)
    u1 = dec.basis[:, 0]
    canonical = _sym(rho * np.outer(u1, u1))
    d = _frob(a - canonical)
    max_inner = rho * float(dec.eigenvalues[0])
    if _leading_multiplicity(dec.eigenvalues, _frob(a)) == 1:
        return ProjectionOutcome(canonical, UNIQUE, d, max_inner=max_inner)
    return _continuum(
        canonical,
        "rank-one matrices over the leading eigenspace",
        d,
        max_inner=max_inner,
    )


def proj_psd_cap_sphere(a, rho: float) -> ProjectionOutcome:
    """Project onto (PSD cone intersect Frobenius sphere of radius rho).

    The sign of the largest eigenvalue selects the regime, mirroring the
    finitely generated case with rank-one matrices as generators.
    """
    a = as_sym_matrix(a)
    if rho <= 0:
        raise ValueError("rho must be positive")
    dec = eig_sym(a)
    lam = dec.eigenvalues
    norm_a = _frob(a)
    kappa = rho * float(lam[0])
    tau = kappa_tolerance(norm_a, rho)

    if kappa > tau:
        lam_plus = np.maximum(lam, 0.0)
        scaled = (rho / float(np.linalg.norm(lam_plus))) * lam_plus
        p = _sym((dec.basis * scaled) @ dec.basis.T)
        return _unique(p, _frob(a - p))

    u1 = dec.basis[:, 0]
    canonical = _sym(rho * np.outer(u1, u1))
    d = _frob(a - canonical)
    if abs(kappa) <= tau:
        return _continuum(
            canonical, "sphere cap of PSD matrices over the null eigenspace", d
        )
    if _leading_multiplicity(lam, norm_a) == 1:
        return _finite([canonical], d)
    return _continuum(canonical, "rank-one matrices over the leading eigenspace", d)


# --------------------------------------------------------------------------
# Structural checks
# --------------------------------------------------------------------------


def moreau_check(x, cone_projector, polar_projector):
    """Residuals of the conic decomposition identities for a polar pair.

    Returns ``(||x - P_K x - P_polar x||, | ||x||^2 - d_K^2 - d_polar^2 |)``;
    both vanish for exact projectors onto mutually polar cones.
    """
    x = as_vector(x)
    pk = np.asarray(cone_projector(x), dtype=float)
    pp = np.asarray(polar_projector(x), dtype=float)
    r1 = float(np.linalg.norm(x - pk - pp))
    dk2 = float(np.sum((x - pk) ** 2))
    dp2 = float(np.sum((x - pp) ** 2))
    r2 = abs(float(x @ x) - dk2 - dp2)
    return r1, r2


def kkt_cone_check(x, p, member_test, polar_test, tol: float = 1e-9) -> bool:
    """Check the variational characterization of a cone projection.

    ``p`` must lie in the cone, be orthogonal to ``x - p``, and leave
    ``x - p`` in the polar cone; membership is delegated to the caller's
    tests so the check stays independent of any projector implementation.
    """
    x = as_vector(x)
    p = as_vector(p)
    if not member_test(p):
        return False
    if abs(float((x - p) @ p)) > tol:
        return False
    return bool(polar_test(x - p))
