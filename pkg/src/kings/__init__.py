"""Retrodicting measurement outcomes across mutually unbiased bases.

The library builds unbiased basis families, evaluates and optimizes the
ancilla-free ("conventional") retrodiction strategies, reproduces the exact
success ceilings and the d=4 strategies that reach them, certifies that no
analogous d=3 strategy exists, and covers the cube-diagonal qubit variant
with both its entangled-pair protocol and its best ancilla-free one.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    RelaxedMaximum,
    bound_p,
    bound_report,
    control_bound,
    guess_bound,
    overlap_target,
    relaxed_f_max,
    total_bound,
)
from .config import DEFAULT, Tolerances
from .cube import (
    CubeConventionalResult,
    CubeGameSetup,
    PredictionTable,
    collapse_row_labels,
    conventional_baseline,
    conventional_cube_optimize,
    conventional_cube_rule,
    conventional_cube_value,
    king_collapse,
    make_cube_setup,
    vaa_overlap_table,
    vaa_prediction_table,
    vaa_success_exact,
    verify_bell_decompositions,
    wrong_prediction_mass,
)
from .game import (
    CubeConventionalStrategy,
    CubeVaaStrategy,
    GameConfig,
    GameResult,
    PlayRecord,
    play_once,
    run,
)
from .mub import (
    CertificationReport,
    MubFamily,
    OrthonormalBasis,
    certify_family,
    construct_mub,
    is_prime,
    orthonormality_defect,
    two_qubit_observable_pairs,
)
from .qstate import (
    as_state,
    born_probability,
    inner,
    same_ray,
    spin_up_state,
    tensor,
)
from .search import (
    ImpossibilityReport,
    MeasurementBasis4,
    SignalState,
    TupleDeviation,
    certify_d3_impossible,
    certify_optimal_strategy,
    find_measurement_bases,
    find_signal_states,
    off_lattice_deviation,
    refine_signal_phases,
    signal_candidate,
    single_overlap_deviation,
)
from .strategy import (
    AssignmentMap,
    ConventionalStrategy,
    GeneralStrategy,
    SuccessBreakdown,
    assign_greedy,
    build_strategy,
    complement_strategy,
    overlap_matrix,
    random_control_basis,
    random_strategy,
    repair_well_conditioned,
    success_exact,
    success_exact_general,
)
from .verify import ACCEPTANCE_SEED, CriterionResult, run_all

__all__ = [
    "__version__",
    # bounds
    "BoundReport", "RelaxedMaximum", "bound_p", "bound_report", "control_bound",
    "guess_bound", "overlap_target", "relaxed_f_max", "total_bound",
    # config
    "DEFAULT", "Tolerances",
    # cube
    "CubeConventionalResult", "CubeGameSetup", "PredictionTable",
    "collapse_row_labels", "conventional_baseline", "conventional_cube_optimize",
    "conventional_cube_rule", "conventional_cube_value", "king_collapse",
    "make_cube_setup", "vaa_overlap_table", "vaa_prediction_table",
    "vaa_success_exact", "verify_bell_decompositions", "wrong_prediction_mass",
    # game
    "CubeConventionalStrategy", "CubeVaaStrategy", "GameConfig", "GameResult",
    "PlayRecord", "play_once", "run",
    # mub
    "CertificationReport", "MubFamily", "OrthonormalBasis", "certify_family",
    "construct_mub", "is_prime", "orthonormality_defect", "two_qubit_observable_pairs",
    # qstate
    "as_state", "born_probability", "inner", "same_ray", "spin_up_state", "tensor",
    # search
    "ImpossibilityReport", "MeasurementBasis4", "SignalState", "TupleDeviation",
    "certify_d3_impossible", "certify_optimal_strategy", "find_measurement_bases",
    "find_signal_states", "off_lattice_deviation", "refine_signal_phases",
    "signal_candidate", "single_overlap_deviation",
    # strategy
    "AssignmentMap", "ConventionalStrategy", "GeneralStrategy", "SuccessBreakdown",
    "assign_greedy", "build_strategy", "complement_strategy", "overlap_matrix",
    "random_control_basis", "random_strategy", "repair_well_conditioned",
    "success_exact", "success_exact_general",
    # verify
    "ACCEPTANCE_SEED", "CriterionResult", "run_all",
]
