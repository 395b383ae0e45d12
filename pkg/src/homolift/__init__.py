"""Exact algebra for deck-group extensions of homology covers.

Decide and construct splittings of 1 -> M_k -> L~ -> L -> 1 for actions on
k-homology covers: canonical subgroup bases over Z_k, invariant cores and
closures, twisted norm equations for cyclic lifts, explicit quotient
extension groups with split tests, and a catalog of worked scenarios.
"""

from .zkmod import (
    Modulus,
    ModuleVector,
    MatrixZk,
    SubgroupBasis,
    QuotientModule,
    SolutionSet,
    howell_form,
    solve_linear,
    span,
    full_module,
    trivial_subgroup,
    vector,
    unit_vector,
    subgroup_sum,
    subgroup_intersect,
    subgroup_contains,
    contains,
    subgroup_order,
    quotient_invariants,
    relative_quotient_invariants,
    smith_normal_form,
)
from .action import (
    Action,
    EnumConstraints,
    QuotientAction,
    core,
    enumerate_invariant_subgroups,
    induced_quotient_action,
    is_invariant,
    minimal_invariant_subgroup,
)
from .lift import (
    CyclicLiftProblem,
    LiftDecision,
    NormObstruction,
    SplitReport,
    coprime_split,
    cyclic_lift_solve,
    norm_map,
    norm_matrix,
    theorem5_verdict,
)
from .extension import (
    ClosureReport,
    EdgeDefectTable,
    ExtGroup,
    ExtensionSpec,
    Fingerprint,
    FiniteGroup,
    Identification,
    build_ext_group,
    coset_enumerate,
    galois_closure_pipeline,
    identify,
    realize_group,
    solve_edge_defects,
    split_test,
)
from .surfaces import (
    ActionSetup,
    EpimorphismSpec,
    OrbifoldSignature,
    basis_vector,
    free_cyclic_action,
    involution_action,
    order3_action,
    riemann_hurwitz_genus,
    s3_action,
)
from .scenarios import Scenario, ScenarioResult, scenario, scenario_names

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
