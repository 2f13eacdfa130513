"""Multicast schedule synthesis and exact DoF analysis for shared-cache
coded caching under a dynamic user-to-cache association."""

from .analysis import (
    DofReport,
    PipelineResult,
    SweepResult,
    SweepRow,
    build_schedule,
    choose_mode,
    closed_form_dof,
    default_demands,
    dof_loss_uniform,
    dof_sweep,
    empirical_dof,
    run_pipeline,
    sigma,
    sigma_bin,
    sigma_experiment,
    sweep_params,
    uniform_optimum,
)
from .core import (
    STRATEGY_A,
    STRATEGY_B,
    ConfigError,
    DeliveryParams,
    NetworkConfig,
    Rational,
    binom,
    config_from_eta,
    ksubsets,
    mod1,
    validate,
)
from .placement import (
    MiniFileId,
    ServedPartition,
    SubpacketId,
    missing_subpackets,
    profile_cache,
    select_served,
    split_library,
    subpackets_per_minifile,
)
from .schedule import Codeword, Schedule, Transmission, UcRound
from .strategy_a import elevate_profile, schedule_a
from .strategy_b import head_window, pad_profile, schedule_b, slot_pattern
from .unicast import schedule_uc
from .verify import VerificationReport, check_coverage, check_zf_feasibility

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "NetworkConfig", "DeliveryParams", "Rational",
    "STRATEGY_A", "STRATEGY_B",
    "mod1", "binom", "ksubsets", "config_from_eta", "validate",
    "MiniFileId", "SubpacketId", "ServedPartition",
    "split_library", "profile_cache", "subpackets_per_minifile",
    "missing_subpackets", "select_served",
    "Codeword", "Transmission", "UcRound", "Schedule",
    "elevate_profile", "schedule_a",
    "pad_profile", "head_window", "slot_pattern", "schedule_b",
    "schedule_uc",
    "VerificationReport", "check_coverage", "check_zf_feasibility",
    "DofReport", "PipelineResult", "SweepRow", "SweepResult",
    "default_demands", "build_schedule", "empirical_dof", "closed_form_dof",
    "run_pipeline", "dof_sweep", "sweep_params", "uniform_optimum", "dof_loss_uniform",
    "choose_mode", "sigma", "sigma_bin", "sigma_experiment",
    "__version__",
]
