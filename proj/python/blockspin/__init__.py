"""Two-group binary-choice model on a random communication graph.

Thin re-export of the compiled core: graph generation, energies, Glauber
sampling, exact enumeration, and the mean-field/LDP predictions.
"""

from blockspin._core import (  # noqa: F401
    BlockGraph,
    ConcentrationReport,
    ExperimentConfig,
    IoError,
    MagnetizationDistribution,
    ModelParams,
    PhaseDiagnosis,
    RateLandscape,
    ResourceLimitError,
    SandwichResult,
    SpinConfig,
    classify_phase,
    concentration_report_all,
    concentration_report_sampled,
    cw_fixed_point,
    detailed_balance_check,
    energy_complete,
    energy_gap_bound,
    energy_random,
    enumerate_gibbs,
    enumerate_gibbs_complete,
    flip_probability,
    free_energy_variational,
    gen_graph,
    gen_nested,
    link_counts,
    local_field,
    log_binomial,
    log_partition_complete,
    log_partition_random,
    magnetization,
    nested_agent_of_vertex,
    nested_vertex_of_agent,
    rate_function,
    rate_landscape,
    rate_minimizers,
    rel_entropy,
    run_chain,
    run_experiment,
    sandwich_check,
    spin_entropy,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
