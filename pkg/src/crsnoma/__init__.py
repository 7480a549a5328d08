"""Rates and outage probabilities for NOMA-based cooperative relaying
under underlay spectrum sharing with a peak-interference constraint.

Closed-form average achievable rates and outage probabilities for both
power-domain symbols (single antenna and selection combining), an
independent Monte-Carlo channel simulator that cross-validates every
analytic quantity and provides the OMA baseline, and a sweep CLI that
emits plot-ready tables.
"""

from .channels import (
    AntennaConfig,
    ChannelDraw,
    ChannelProfile,
    DerivedRateParams,
    draw_channels,
)
from .closed_form import (
    PowerSplit,
    RateReport,
    log_ratio_kernel,
    rate_s1,
    rate_s1_sc,
    rate_s2,
    rate_s2_sc,
    sum_rate,
)
from .montecarlo import (
    Estimate,
    SimConfig,
    instantaneous_sinrs,
    mc_outage,
    mc_rate_noma,
    mc_rate_oma,
)
from .outage import OutageTargets, make_targets, outage_s1, outage_s2
from .sweep import (
    CrossoverResult,
    SweepRow,
    SweepSpec,
    emit,
    find_crossover,
    paper_scenario,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "AntennaConfig", "ChannelDraw", "ChannelProfile", "DerivedRateParams",
    "draw_channels",
    "PowerSplit", "RateReport", "log_ratio_kernel",
    "rate_s1", "rate_s1_sc", "rate_s2", "rate_s2_sc", "sum_rate",
    "Estimate", "SimConfig", "instantaneous_sinrs",
    "mc_outage", "mc_rate_noma", "mc_rate_oma",
    "OutageTargets", "make_targets", "outage_s1", "outage_s2",
    "CrossoverResult", "SweepRow", "SweepSpec",
    "emit", "find_crossover", "paper_scenario", "run_sweep",
]
