"""Projectors onto cone/ball and cone/sphere intersections, with solvers.

The library exposes three layers: closed-form projection operators (the
``projections`` module), five first-order methods minimizing a quadratic
over the orthant-sphere set (``solvers``), and an exactly labeled
copositivity benchmark (``copositivity``).  A command-line front end
lives in ``cli``.
"""

from ._kernels import available_backends, backend_name
from .copositivity import (
    BenchmarkReport,
    BenchmarkRow,
    LabeledMatrix,
    exact_mu_oracle,
    generate_labeled,
    horn_matrix,
    mu_via_solver,
    run_benchmark,
)
from .linalg import (
    EigenDecomposition,
    as_sym_matrix,
    as_vector,
    eig_sym,
    operator_norm,
    positive_part,
    trace_inner,
)
from .projections import (
    CONTINUUM,
    FINITE,
    UNIQUE,
    FiniteGeneratorCone,
    LorentzSpec,
    OrthonormalCone,
    PolarCaseNeedsGenerators,
    ProjectionOutcome,
    composed_ball_then_cone,
    kkt_cone_check,
    max_inner_sphere_slice,
    moreau_check,
    polar_membership_from_projector,
    proj_ball,
    proj_circle,
    proj_cone_cap_ball,
    proj_cone_cap_sphere_generic,
    proj_fg_cone_cap_sphere,
    proj_lorentz,
    proj_lorentz_cap_sphere,
    proj_orthant_cap_sphere,
    proj_orthonormal_cone,
    proj_polar_orthonormal_cone,
    proj_psd,
    proj_psd_cap_sphere,
    proj_rank1_sphere,
    proj_ray,
    proj_sphere,
    proj_sphere_slice,
)
from .solvers import (
    ALGORITHM_IDS,
    QuadraticObjective,
    SolverConfig,
    SolverTrace,
    dr,
    fista,
    lange_proximal_distance,
    li_pong_dr,
    pgm,
    stop_rule,
)

__version__ = "0.1.0"
