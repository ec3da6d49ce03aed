"""Periodic attractors of seasonally forced integrodifference equations."""

from ._core import (
    AttractorResult,
    BoundSource,
    Budget,
    Certificate,
    Comparison,
    Config,
    Error,
    L2Mode,
    LipschitzReport,
    SemilinearResult,
    Simulation,
    budget_for_windows,
    certify_contraction,
    compare_inhomogeneities,
    load_config,
    parse_config,
    required_iterations,
    run_attractor,
    run_lipschitz_report,
    run_semilinear,
    run_simulation,
    write_attractor_outputs,
)

__all__ = [
    "AttractorResult",
    "BoundSource",
    "Budget",
    "Certificate",
    "Comparison",
    "Config",
    "Error",
    "L2Mode",
    "LipschitzReport",
    "SemilinearResult",
    "Simulation",
    "budget_for_windows",
    "certify_contraction",
    "compare_inhomogeneities",
    "load_config",
    "parse_config",
    "required_iterations",
    "run_attractor",
    "run_lipschitz_report",
    "run_semilinear",
    "run_simulation",
    "write_attractor_outputs",
]
