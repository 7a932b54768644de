"""Command-line front end.

Subcommands: ``project`` for one-off projection queries, ``copositive``
for checking a matrix file, ``benchmark`` for the success-rate table, and
``horn`` for the five-solver run on the classical Horn matrix.  All
printed reals use 17 significant digits (round-trip safe for doubles);
configuration flows exclusively through flags so that a command line
reproduces byte-identically.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import copositivity, projections, solvers
from .linalg import as_sym_matrix, as_vector
from .projections import (
    FiniteGeneratorCone,
    LorentzSpec,
    OrthonormalCone,
    ProjectionOutcome,
)
from .solvers import QuadraticObjective, SolverConfig

PROJECT_SETS = (
    "ball",
    "sphere",
    "ray",
    "orthant",
    "orthant-cap-sphere",
    "fg-cone-cap-sphere",
    "cone-cap-ball",
    "lorentz",
    "lorentz-cap-sphere",
    "psd",
    "psd-cap-sphere",
    "circle",
)


def fmt(value: float) -> str:
    return format(float(value), ".17g")


def fmt_vector(v) -> str:
    return ",".join(fmt(x) for x in np.asarray(v, dtype=float).ravel()) if np.ndim(v) else fmt(v)


def fmt_matrix(m) -> str:
    return "; ".join(",".join(fmt(x) for x in row) for row in np.asarray(m, dtype=float))


def parse_vector(text: str) -> np.ndarray:
    try:
        return as_vector([float(tok) for tok in text.split(",") if tok != ""])
    except ValueError as exc:
        raise ValueError(f"could not parse vector {text!r}: {exc}") from None


def read_matrix_file(path: str) -> np.ndarray:
    """Parse the plain-text matrix format: first token N, then N*N reals."""
    with open(path, "r", encoding="utf-8") as fh:
        tokens = fh.read().split()
    if not tokens:
        raise ValueError(f"{path}: empty matrix file")
    try:
        n = int(tokens[0])
    except ValueError:
        raise ValueError(f"{path}: first token must be the dimension") from None
    if n < 1 or len(tokens) != 1 + n * n:
        raise ValueError(f"{path}: expected {n}*{n} entries after the dimension")
    try:
        vals = [float(tok) for tok in tokens[1:]]
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None
    return as_sym_matrix(np.asarray(vals).reshape(n, n))


def write_matrix_file(path: str, m) -> None:
    m = np.asarray(m, dtype=float)
    lines = [str(m.shape[0])]
    lines.extend(" ".join(fmt(x) for x in row) for row in m)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


# --------------------------------------------------------------------------
# project
# --------------------------------------------------------------------------


def _print_outcome(outcome: ProjectionOutcome, matrix_shaped: bool = False) -> None:
    render = fmt_matrix if matrix_shaped else fmt_vector
    print(f"canonical: {render(outcome.canonical)}")
    if outcome.cardinality == projections.FINITE:
        print(f"cardinality: FiniteSet({len(outcome.points)})")
    elif outcome.cardinality == projections.CONTINUUM:
        print(f"cardinality: Continuum ({outcome.description})")
    else:
        print("cardinality: Unique")
    print(f"distance: {fmt(outcome.distance)}")


def _require(args, parser, names):
    for name in names:
        if getattr(args, name.replace("-", "_"), None) is None:
            parser.error(f"project {args.set} requires --{name}")


def cmd_project(args, parser) -> int:
    target = args.set
    if target in ("psd", "psd-cap-sphere"):
        _require(args, parser, ["matrix-file"])
        a = read_matrix_file(args.matrix_file)
        if target == "psd":
            p = projections.proj_psd(a)
            outcome = ProjectionOutcome(
                p, projections.UNIQUE, float(np.linalg.norm(a - p))
            )
        else:
            _require(args, parser, ["rho"])
            outcome = projections.proj_psd_cap_sphere(a, args.rho)
        _print_outcome(outcome, matrix_shaped=True)
        return 0

    _require(args, parser, ["point"])
    x = parse_vector(args.point)

    if target == "ball":
        _require(args, parser, ["rho"])
        outcome = projections.proj_ball(x, args.rho)
    elif target == "sphere":
        _require(args, parser, ["rho"])
        outcome = projections.proj_sphere(x, args.rho)
    elif target == "ray":
        _require(args, parser, ["direction"])
        outcome = projections.proj_ray(x, parse_vector(args.direction))
    elif target == "orthant":
        cone = OrthonormalCone(np.eye(x.size))
        outcome = projections.proj_orthonormal_cone(x, cone)
    elif target == "orthant-cap-sphere":
        outcome = projections.proj_orthant_cap_sphere(x)
    elif target == "fg-cone-cap-sphere":
        _require(args, parser, ["rho", "generator"])
        gens = np.vstack([parse_vector(g) for g in args.generator])
        outcome = projections.proj_fg_cone_cap_sphere(
            x, FiniteGeneratorCone(gens, args.rho)
        )
    elif target == "cone-cap-ball":
        _require(args, parser, ["rho"])
        outcome = projections.proj_cone_cap_ball(
            x, args.rho, lambda v: np.maximum(v, 0.0)
        )
    elif target == "lorentz":
        _require(args, parser, ["xi", "alpha"])
        head, tail = projections.proj_lorentz(x, args.xi, args.alpha)
        p = np.append(head, tail)
        point = np.append(x, args.xi)
        outcome = ProjectionOutcome(
            p, projections.UNIQUE, float(np.linalg.norm(point - p))
        )
    elif target == "lorentz-cap-sphere":
        _require(args, parser, ["xi", "alpha", "rho"])
        outcome = projections.proj_lorentz_cap_sphere(
            x, args.xi, LorentzSpec(alpha=args.alpha, rho=args.rho)
        )
    elif target == "circle":
        _require(args, parser, ["rho", "axes"])
        axes = [int(tok) - 1 for tok in args.axes.split(",") if tok != ""]
        if not axes or any(a < 0 or a >= x.size for a in axes):
            parser.error("--axes must list 1-based coordinates within the dimension")
        mask = np.zeros(x.size)
        mask[axes] = 1.0
        outcome = projections.proj_circle(x, args.rho, lambda v: mask * v)
    else:  # pragma: no cover - argparse restricts choices
        parser.error(f"unknown set {target!r}")
    _print_outcome(outcome)
    return 0


# --------------------------------------------------------------------------
# copositive / horn
# --------------------------------------------------------------------------


def _parse_algorithms(text: str):
    algs = tuple(tok for tok in text.split(",") if tok != "")
    for alg in algs:
        if alg not in solvers.ALGORITHM_IDS:
            raise ValueError(
                f"unknown algorithm {alg!r}; choose from {','.join(solvers.ALGORITHM_IDS)}"
            )
    return algs


def _config_from(args) -> SolverConfig:
    return SolverConfig(max_iter=args.max_iter, rel_tol=args.rel_tol, seed=args.seed)


def cmd_copositive(args, parser) -> int:
    m = read_matrix_file(args.matrix_file)
    algorithms = _parse_algorithms(args.algorithms)
    cfg = _config_from(args)
    print(f"matrix: {m.shape[0]}x{m.shape[0]} from {args.matrix_file}")
    print(f"{'algorithm':<10} {'mu_hat':<25} avg_iter")
    best = None
    for alg in algorithms:
        mu_hat, avg_iter = copositivity.mu_via_solver(m, alg, cfg, restarts=args.restarts)
        best = mu_hat if best is None else min(best, mu_hat)
        print(f"{alg:<10} {fmt(mu_hat):<25} {fmt(avg_iter)}")
    if m.shape[0] <= copositivity.ORACLE_MAX_DIM:
        mu = copositivity.exact_mu_oracle(m)
        print(f"oracle: {fmt(mu)}")
        verdict = mu >= 0.0
    else:
        print(f"oracle: unavailable (dimension exceeds {copositivity.ORACLE_MAX_DIM})")
        verdict = best >= 0.0
    print(f"verdict: {'COPOSITIVE' if verdict else 'NOT COPOSITIVE'}")
    return 0


def cmd_horn(args, parser) -> int:
    h = copositivity.horn_matrix()
    obj = QuadraticObjective.from_matrix(h)
    cfg = _config_from(args)
    starts = [solvers.default_start(5)] + solvers.random_starts(5, args.restarts - 1, cfg.seed)
    print(f"{'algorithm':<10} {'fval':<25} iterations")
    for alg in solvers.ALGORITHM_IDS:
        traces = [solvers.run(alg, obj, start, cfg) for start in starts]
        best = min(traces, key=lambda t: t.final_fval)
        print(f"{alg:<10} {fmt(best.final_fval):<25} {best.iterations}")
    return 0


# --------------------------------------------------------------------------
# benchmark
# --------------------------------------------------------------------------


def _report_markdown(report) -> str:
    lines = [
        "Copositivity benchmark (labels from the exact face-enumeration "
        "oracle; one default start per trial).",
        "",
        "| size | group | algorithm | success | avg_iter |",
        "| --- | --- | --- | --- | --- |",
    ]
    for r in report.rows:
        lines.append(
            f"| {r.size} | {r.group} | {r.algorithm} | {r.success} | {fmt(r.avg_iter)} |"
        )
    return "\n".join(lines) + "\n"


def _report_json(report) -> str:
    payload = {
        "labeling": "exact face-enumeration oracle",
        "rows": [
            {
                "size": r.size,
                "group": r.group,
                "algorithm": r.algorithm,
                "success": r.success,
                "avg_iter": r.avg_iter,
            }
            for r in report.rows
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def cmd_benchmark(args, parser) -> int:
    try:
        sizes = tuple(int(tok) for tok in args.sizes.split(",") if tok != "")
    except ValueError:
        parser.error("--sizes must be a comma-separated list of integers")
    if args.trials < 0:
        parser.error("--trials must be nonnegative")
    algorithms = _parse_algorithms(args.algorithms)
    report = copositivity.run_benchmark(
        sizes, args.trials, algorithms, _config_from(args), seed=args.seed
    )
    if args.format == "csv":
        text = copositivity.report_to_csv(report)
    elif args.format == "md":
        text = _report_markdown(report)
    else:
        text = _report_json(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _add_solver_flags(sub) -> None:
    sub.add_argument("--max-iter", type=int, default=1000)
    sub.add_argument("--rel-tol", type=float, default=1e-8)
    sub.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conesphere",
        description="Projections onto cone/ball and cone/sphere intersections, "
        "and copositivity detection via first-order solvers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("project", help="project a point onto a supported set")
    p.add_argument("set", choices=PROJECT_SETS)
    p.add_argument("--point", help="comma-separated reals, no spaces")
    p.add_argument("--rho", type=float, help="ball/sphere radius")
    p.add_argument("--direction", help="unit direction for the ray")
    p.add_argument("--xi", type=float, help="scalar coordinate in the product space")
    p.add_argument("--alpha", type=float, help="ice-cream cone aperture")
    p.add_argument("--generator", action="append", help="cone generator (repeatable)")
    p.add_argument("--axes", help="1-based coordinates spanning the subspace")
    p.add_argument("--matrix-file", help="matrix input for the PSD sets")
    p.set_defaults(func=cmd_project)

    c = sub.add_parser("copositive", help="check copositivity of a matrix file")
    c.add_argument("matrix_file")
    c.add_argument("--algorithms", default=",".join(solvers.ALGORITHM_IDS))
    c.add_argument("--restarts", type=int, default=10)
    _add_solver_flags(c)
    c.set_defaults(func=cmd_copositive)

    b = sub.add_parser("benchmark", help="reproduce the success-rate table")
    b.add_argument("--sizes", default="2,3,4")
    b.add_argument("--trials", type=int, default=100)
    b.add_argument("--algorithms", default=",".join(solvers.ALGORITHM_IDS))
    b.add_argument("--format", choices=("csv", "md", "json"), default="csv")
    b.add_argument("--output", help="write to this file instead of stdout")
    _add_solver_flags(b)
    b.set_defaults(func=cmd_benchmark)

    h = sub.add_parser("horn", help="run all five solvers on the Horn matrix")
    h.add_argument("--restarts", type=int, default=10)
    _add_solver_flags(h)
    h.set_defaults(func=cmd_horn)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (ValueError, OSError, RuntimeError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
