"""Exact copositivity ground truth and the solver benchmark protocol.

A symmetric matrix is copositive when its quadratic form is nonnegative
on the nonnegative orthant; equivalently the minimum of ``(1/2) x'Mx``
over the orthant-sphere set is nonnegative.  For small matrices that
minimum is computed exactly here by face enumeration: the minimizer has
some support set, and on the interior of that face it must be a unit
eigenvector of the corresponding principal submatrix with components of
one strict sign.  Enumerating all supports and all one-signed eigenvectors
therefore yields the global minimum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import solvers
from .linalg import as_sym_matrix, eig_sym
from .solvers import QuadraticObjective, SolverConfig, default_start, random_starts

ORACLE_MAX_DIM = 12

# Eigenvector components below this are treated as absent from the
# support; the candidate then belongs to a smaller face, which is
# enumerated separately.
_SUPPORT_EPS = 1e-12

# Candidate eigenvalues below this multiple of the submatrix norm are
# inside the eigensolver's backward error and are taken as exactly zero;
# otherwise a boundary matrix (minimum exactly 0) can be mislabeled by a
# 1e-17 rounding residue.
_EIGENVALUE_SNAP_RTOL = 1e-13

_GENERATE_DIMS = (2, 3, 4)
_SAMPLING_CAP = 1_000_000


@dataclass(frozen=True)
class LabeledMatrix:
    """A symmetric matrix with its exact minimum and copositivity flag."""

    matrix: np.ndarray
    mu_exact: float
    copositive: bool


@dataclass(frozen=True)
class BenchmarkRow:
    size: int
    group: str
    algorithm: str
    success: int
    avg_iter: float


@dataclass(frozen=True)
class BenchmarkReport:
    rows: tuple


def horn_matrix() -> np.ndarray:
    """The classical 5x5 plus-minus-one matrix that is copositive with minimum 0."""
    return np.array(
        [
            [1.0, -1.0, 1.0, 1.0, -1.0],
            [-1.0, 1.0, -1.0, 1.0, 1.0],
            [1.0, -1.0, 1.0, -1.0, 1.0],
            [1.0, 1.0, -1.0, 1.0, -1.0],
            [-1.0, 1.0, 1.0, -1.0, 1.0],
        ]
    )


def stationary_candidates(m) -> list:
    """All stationary points of the form on the orthant-sphere set.

    Returns ``(value, point)`` pairs: for every support set, each unit
    eigenvector of the principal submatrix whose components all share one
    strict sign, flipped nonnegative and zero-padded.  Eigenvectors with
    a component below the support threshold are skipped; the face they
    actually live on is enumerated on its own.
    """
    m = as_sym_matrix(m)
    n = m.shape[0]
    if n > ORACLE_MAX_DIM:
        raise ValueError(f"face enumeration is limited to dimension {ORACLE_MAX_DIM}")
    candidates = []
    indices = range(n)
    for size in range(1, n + 1):
        for subset in itertools.combinations(indices, size):
            sel = np.asarray(subset)
            sub = m[np.ix_(sel, sel)]
            snap = _EIGENVALUE_SNAP_RTOL * float(np.linalg.norm(sub))
            dec = eig_sym(sub)
            for j in range(size):
                vec = dec.basis[:, j]
                if np.min(np.abs(vec)) < _SUPPORT_EPS:
                    continue
                if not (np.all(vec > 0.0) or np.all(vec < 0.0)):
                    continue
                y = np.abs(vec)
                y /= np.linalg.norm(y)
                point = np.zeros(n)
                point[sel] = y
                lam = float(dec.eigenvalues[j])
                if abs(lam) <= snap:
                    lam = 0.0
                candidates.append((0.5 * lam, point))
    return candidates


def exact_mu_oracle(m) -> float:
    """Exact minimum of ``(1/2) x'Mx`` over the orthant-sphere set."""
    return min(value for value, _ in stationary_candidates(m))


def _draw_symmetric(rng: np.random.Generator, n: int) -> np.ndarray:
    upper = np.triu_indices(n)
    vals = rng.uniform(-1.0, 1.0, upper[0].size)
    m = np.zeros((n, n))
    m[upper] = vals
    m[(upper[1], upper[0])] = vals
    return m


def generate_labeled(n: int, count: int, want_copositive: bool, seed) -> list:
    """Rejection-sample labeled matrices with i.i.d. uniform[-1, 1] entries.

    Labels come from the exact oracle, so they are self-certifying.
    Deterministic for a fixed seed.
    """
    if n not in _GENERATE_DIMS:
        raise ValueError(f"supported sizes are {_GENERATE_DIMS}")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(_SAMPLING_CAP):
        if len(out) >= count:
            break
        m = _draw_symmetric(rng, n)
        if want_copositive and float(np.min(np.diag(m))) < 0.0:
            # A negative diagonal entry certifies mu < 0 on an axis.
            continue
        mu = exact_mu_oracle(m)
        if (mu >= 0.0) == want_copositive:
            out.append(LabeledMatrix(matrix=m, mu_exact=mu, copositive=mu >= 0.0))
    else:
        raise RuntimeError("sampling cap exceeded while generating labeled matrices")
    return out


def mu_via_solver(m, algorithm: str, cfg: SolverConfig | None = None, restarts: int = 1):
    """Best objective value over multistart solver runs.

    Runs from the default start plus ``restarts - 1`` seeded random
    starts; returns ``(mu_hat, average iterations over the runs)``.
    """
    cfg = cfg or SolverConfig()
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    obj = QuadraticObjective.from_matrix(m)
    n = obj.matrix.shape[0]
    starts = [default_start(n)] + random_starts(n, restarts - 1, cfg.seed)
    traces = [solvers.run(algorithm, obj, start, cfg) for start in starts]
    mu_hat = min(trace.final_fval for trace in traces)
    avg_iter = float(np.mean([trace.iterations for trace in traces]))
    return mu_hat, avg_iter


def run_benchmark(
    sizes,
    trials: int,
    algorithms,
    cfg: SolverConfig | None = None,
    seed: int = 0,
    guard_band: float = 0.0,
) -> BenchmarkReport:
    """Success counts and average iterations per (size, group, algorithm).

    For each size, ``trials`` copositive (group A) and ``trials``
    non-copositive (group B) matrices are generated and labeled by the
    exact oracle; every algorithm then runs once from the default start.
    A run succeeds when the sign of its final value (threshold 0, widened
    by ``guard_band`` if set) matches the label; iterations are averaged
    over successful runs only.
    """
    cfg = cfg or SolverConfig()
    algorithms = tuple(algorithms)
    for alg in algorithms:
        if alg not in solvers.ALGORITHM_IDS:
            raise ValueError(f"unknown algorithm {alg!r}")
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    if trials == 0:
        return BenchmarkReport(rows=())

    rows = []
    for n in sizes:
        for group_index, (group, want) in enumerate((("A", True), ("B", False))):
            cell_seed = np.random.SeedSequence(seed, spawn_key=(n, group_index))
            labeled = generate_labeled(n, trials, want, cell_seed)
            results = {alg: [] for alg in algorithms}
            for item in labeled:
                obj = QuadraticObjective.from_matrix(item.matrix)
                start = default_start(n)
                for alg in algorithms:
                    trace = solvers.run(alg, obj, start, cfg)
                    predicted = trace.final_fval >= -guard_band
                    if predicted == item.copositive:
                        results[alg].append(trace.iterations)
            for alg in algorithms:
                iters = results[alg]
                rows.append(
                    BenchmarkRow(
                        size=int(n),
                        group=group,
                        algorithm=alg,
                        success=len(iters),
                        avg_iter=float(np.mean(iters)) if iters else 0.0,
                    )
                )
    return BenchmarkReport(rows=tuple(rows))


CSV_HEADER = "size,group,algorithm,success,avg_iter"


def report_to_csv(report: BenchmarkReport) -> str:
    lines = [CSV_HEADER]
    for r in report.rows:
        lines.append(
            f"{r.size},{r.group},{r.algorithm},{r.success},{format(r.avg_iter, '.17g')}"
        )
    return "\n".join(lines) + "\n"


def report_from_csv(text: str) -> BenchmarkReport:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("missing or malformed CSV header")
    rows = []
    for line in lines[1:]:
        size, group, algorithm, success, avg_iter = line.split(",")
        rows.append(
            BenchmarkRow(
                size=int(size),
                group=group,
                algorithm=algorithm,
                success=int(success),
                avg_iter=float(avg_iter),
            )
        )
    return BenchmarkReport(rows=tuple(rows))
