"""Sheaf-theoretic contextuality: scenarios, empirical models, LP and KCBS analysis."""

from .analysis import (
    LP_TOL,
    SUPPORT_TOL,
    ContextualityVerdict,
    Verdict,
    classify_hierarchy,
    global_assignments,
    noncontextual_lp,
)
from .kcbs import (
    KCBSSetup,
    braided_projectors,
    classical_bound,
    contextuality_from_braiding,
    kcbs_model,
    kcbs_projectors_fibonacci,
    kcbs_value,
    pentagon_scenario,
)
from .scenario import (
    COMMUTE_TOL,
    COMPAT_TOL,
    EmpiricalModel,
    MeasurementScenario,
    ModelError,
    ProjectorSet,
    check_compatibility,
    empirical_from_state,
    scenario_from_projectors,
    uniform_model,
)
