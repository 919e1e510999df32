"""Slope stability of pullback bundles on blow-ups, decided exactly.

The library reduces the stability question for the pullback of a semi-stable
bundle to finite exact computations: truncated slope expansions in the
shrinking parameter, membership of the moment weight in a polyhedral cone,
a strictly-positive-flow program, and a convex moment-map solve, all of which
must agree.
"""

from .epspoly import (
    EpsPoly,
    Interval,
    Sign,
    ZeroPolynomialError,
    as_fraction,
    lex_sign,
    positive_root_bound,
)
from .instance import (
    Ambient,
    GradedComponent,
    Instance,
    Quiver,
    ValidationError,
    degrees_from_intersections,
    two_term_degree,
    validate_instance,
)
from .slopes import (
    Inconclusive,
    Verdict,
    VerdictKind,
    decide_stability,
    enumerate_subsheaves,
    representative_epsilon,
    seesaw_check,
    slope_poly,
    two_term_decide,
)
from .cones import (
    ConePlacement,
    ConePosition,
    DegenerateCone,
    DualGenerator,
    cone_position,
    dual_cone_generators,
    moment_weight,
    subsheaf_of_generator,
    weight_vectors,
)
from .moment import (
    Divergent,
    FlowResult,
    Infeasible,
    MomentProblem,
    MomentSolution,
    SweepRow,
    classify_problem,
    eps_sweep,
    fit_loglog_slope,
    flow_feasibility,
    kn_value_grad_hess,
    solve_moment_map,
)
from .documents import load_instance
from . import documents

__version__ = "0.1.0"

__all__ = [
    "Ambient",
    "ConePlacement",
    "ConePosition",
    "DegenerateCone",
    "Divergent",
    "DualGenerator",
    "EpsPoly",
    "FlowResult",
    "GradedComponent",
    "Inconclusive",
    "Infeasible",
    "Instance",
    "Interval",
    "MomentProblem",
    "MomentSolution",
    "Quiver",
    "Sign",
    "SweepRow",
    "ValidationError",
    "Verdict",
    "VerdictKind",
    "ZeroPolynomialError",
    "as_fraction",
    "classify_problem",
    "cone_position",
    "decide_stability",
    "degrees_from_intersections",
    "dual_cone_generators",
    "enumerate_subsheaves",
    "eps_sweep",
    "fit_loglog_slope",
    "flow_feasibility",
    "kn_value_grad_hess",
    "lex_sign",
    "load_instance",
    "moment_weight",
    "positive_root_bound",
    "representative_epsilon",
    "seesaw_check",
    "slope_poly",
    "solve_moment_map",
    "subsheaf_of_generator",
    "two_term_decide",
    "two_term_degree",
    "validate_instance",
    "weight_vectors",
]
