"""Sparse recovery with partially penalized models.

The penalty sum_{i>r} phi(|x|_[i]) charges only the n - r smallest
magnitudes, leaving the r largest untouched to reduce shrinkage bias.
The package provides the scalar and partial proximal maps, a nonmonotone
proximal gradient solver, feasible augmented Lagrangian drivers for exact
and noisy linear constraints, desk-scale recovery analysis, and a seeded
experiment harness with a CSV-speaking command line.
"""

from .analysis import (
    NSPVerdict,
    RICResult,
    RIPCheck,
    delta_lower_bound,
    gnsp_falsify,
    lnsp_falsify,
    null_space,
    ric_exact,
    rip_condition,
    rip_order,
    rip_threshold,
    stable_error_bound,
)
from .fal import (
    FALConfig,
    FALState,
    SolveResult,
    al_noiseless,
    al_noisy,
    fal_noiseless,
    fal_noisy,
)
from .harness import (
    CSInstanceSpec,
    ExperimentRecord,
    cardinality,
    gen_cs_instance,
    gen_logreg_instance,
    instance_seed,
    r_schedule,
    rel_err,
    run_cs_sweep,
    run_logreg_sweep,
    success,
    write_records_csv,
)
from .npg import (
    NPGConfig,
    NPGResult,
    NPGTrace,
    accept_test,
    bb_initial_step,
    npg_solve,
    stationarity_gap,
)
from .objectives import (
    LinearSystem,
    LogRegData,
    SmoothOracle,
    lambda_max,
    least_squares_oracle,
    load_matrix,
    load_vector,
    logistic_oracle,
    logistic_value_grad,
    residual_norms,
    save_vector,
)
from .partial_prox import PartialRegularizer, ProxSelection, partial_prox, phi_partial_value
from .regularizers import (
    L1,
    MCP,
    SCAD,
    CappedL1,
    Log,
    Lq,
    REGULARIZER_KINDS,
    Regularizer,
    ScalarProxResult,
    make_regularizer,
    phi_value,
    prox_array,
    scalar_prox,
)

__version__ = "0.1.0"

__all__ = [
    "CSInstanceSpec",
    "CappedL1",
    "ExperimentRecord",
    "FALConfig",
    "FALState",
    "L1",
    "LinearSystem",
    "Log",
    "LogRegData",
    "Lq",
    "MCP",
    "NPGConfig",
    "NPGResult",
    "NPGTrace",
    "NSPVerdict",
    "PartialRegularizer",
    "ProxSelection",
    "REGULARIZER_KINDS",
    "RICResult",
    "RIPCheck",
    "Regularizer",
    "SCAD",
    "ScalarProxResult",
    "SmoothOracle",
    "SolveResult",
    "accept_test",
    "al_noiseless",
    "al_noisy",
    "bb_initial_step",
    "cardinality",
    "delta_lower_bound",
    "fal_noiseless",
    "fal_noisy",
    "gen_cs_instance",
    "gen_logreg_instance",
    "gnsp_falsify",
    "instance_seed",
    "lambda_max",
    "least_squares_oracle",
    "lnsp_falsify",
    "load_matrix",
    "load_vector",
    "logistic_oracle",
    "logistic_value_grad",
    "make_regularizer",
    "npg_solve",
    "null_space",
    "partial_prox",
    "phi_partial_value",
    "phi_value",
    "prox_array",
    "r_schedule",
    "rel_err",
    "residual_norms",
    "ric_exact",
    "rip_condition",
    "rip_order",
    "rip_threshold",
    "run_cs_sweep",
    "run_logreg_sweep",
    "save_vector",
    "scalar_prox",
    "stable_error_bound",
    "stationarity_gap",
    "success",
    "write_records_csv",
]
