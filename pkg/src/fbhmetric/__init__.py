"""Kobayashi pseudometric, geodesic disks and boundary Schwarz-lemma audits
for the Fock-Bargmann-Hartogs domains D_{n,m}."""

from .automorphism import (
    Automorphism,
    JacobianMatrix,
    apply,
    compose,
    identity,
    inverse,
    jacobian,
    pushforward,
    reduce_to_normal_position,
)
from .domain import (
    DomainSig,
    Point,
    TangentVector,
    complex_tangent_residual,
    contains,
    defining_value,
    minkowski_functional,
)
from .geodesic import (
    CandidateFamily,
    GeodesicParams,
    boundary_residual,
    boundary_trace,
    evaluate,
    in_geodesic_region,
    make_family,
    sample_admissible,
    sample_family,
    tau_identity_residual,
    validate,
)
from .kobayashi import MetricResult, metric, metric_normal
from .rootsolve import (
    BranchData,
    branch_data,
    g_function,
    h_function,
    solve_alpha_roots,
    solve_beta,
    t_max,
    t_star,
)
from .schwarz import MapUnderTest, SchwarzReport, audit, builtin_examples
from .verify import (
    SuiteReport,
    check_bridge_identity,
    check_dominance_attainment,
    check_invariance,
    check_jacobians,
    probe_seams,
    run_all,
)

__version__ = "0.1.0"
