"""Stable linear bosonic networks: commutator budgets, steady-state
variances, squeezing bounds, and separability boundaries."""

from .errors import (
    ApplicabilityError,
    BosonetError,
    DimensionError,
    FrameError,
    NumericsError,
    StabilityError,
    ValidationError,
)
from .linalg import (
    TOL,
    Tolerances,
    eigenvalues,
    golden_section_max,
    golden_section_min,
    hermitian_defect,
    integrate_spectrum,
    is_stable,
    require_stable,
    solve_lyapunov,
)
from .network import (
    COUPLING_KINDS,
    BathSpec,
    CouplingTerm,
    InputMoments,
    MomentTransform,
    NetworkSpec,
    RealizabilityReport,
    StateSpace,
    beam_splitter,
    bogoliubov_frame,
    build_state_space,
    check_physical_realizability,
    degenerate_parametric,
    detuning,
    is_passive,
    metric,
    network_from_json,
    network_to_json,
    passive_state_space,
    rotate_mode,
    two_mode_squeeze,
)
from .budget import (
    CommutatorBudget,
    IxBoundReport,
    ReciprocityReport,
    SumRuleReport,
    budget_report,
    budget_via_spectrum,
    compute_budget,
    two_mode_ix_bound,
    verify_reciprocity,
    verify_sum_rules,
)
from .steady import (
    CovarianceState,
    QuadratureVariance,
    min_quadrature_variance,
    quadrature_variance,
    steady_covariance,
    variance_decomposition,
)
from .scenarios import (
    FIG1_HEADER,
    FIG2_HEADER,
    FIG3_HEADER,
    BoundaryLine,
    DuanResult,
    OptimalCoupling,
    PairedVarianceReport,
    ParametricOptimum,
    ParametricParams,
    QuadratureBlock,
    SqueezingPowerResult,
    ThreeModeBudget,
    ThreeModeParams,
    TwoModeParams,
    boundary_line,
    duan_quantity,
    fig1_point,
    fig2_point,
    fig3_point,
    optimal_coupling,
    parametric_blocks,
    parametric_bound,
    parametric_network,
    parametric_optimum,
    parametric_variance_check,
    separability_boundary,
    three_mode_budget,
    three_mode_frame_network,
    three_mode_physical_network,
    three_mode_transform,
    two_mode_network,
    two_mode_squeezing_power,
)

__version__ = "0.1.0"
