"""Uplink throughput of a linear cellular array with dynamic user activity.

Thin wrapper package over the compiled extension; all operations live in
``cellrate._core`` and are re-exported here.
"""

from ._core import (
    ActivityModel,
    ChannelProfile,
    ConfigError,
    DegenerateTapsError,
    DivisionByZeroError,
    FixedPoint,
    NoBracketError,
    NoConvergenceError,
    NumericalFailureError,
    SimConfig,
    SupportTooLargeError,
    VirtualGainDistribution,
    apc_distribution,
    cpc_distribution,
    db_to_linear,
    estimate_throughput,
    log_integral,
    mcp_rate_erasure,
    mcp_rate_general,
    mean_gain,
    npc_distribution,
    per_active_user,
    psd,
    relative_entropy_bernoulli,
    resolvent_integral,
    run_figure_preset,
    sample_throughput,
    scp_rate_exact,
    scp_rate_mc,
    selftest,
    sho_apc_beta_closed_form,
    sho_apc_rate,
    solve_beta_erasure,
    solve_fixed_point,
)

__all__ = [
    "ActivityModel",
    "ChannelProfile",
    "ConfigError",
    "DegenerateTapsError",
    "DivisionByZeroError",
    "FixedPoint",
    "NoBracketError",
    "NoConvergenceError",
    "NumericalFailureError",
    "SimConfig",
    "SupportTooLargeError",
    "VirtualGainDistribution",
    "apc_distribution",
    "cpc_distribution",
    "db_to_linear",
    "estimate_throughput",
    "log_integral",
    "mcp_rate_erasure",
    "mcp_rate_general",
    "mean_gain",
    "npc_distribution",
    "per_active_user",
    "psd",
    "relative_entropy_bernoulli",
    "resolvent_integral",
    "run_figure_preset",
    "sample_throughput",
    "scp_rate_exact",
    "scp_rate_mc",
    "selftest",
    "sho_apc_beta_closed_form",
    "sho_apc_rate",
    "solve_beta_erasure",
    "solve_fixed_point",
]
