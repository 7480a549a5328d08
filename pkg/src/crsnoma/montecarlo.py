"""Monte-Carlo oracle for rates and outage probabilities.

Simulates the transmission protocol draw-by-draw: optimal interference-
capped power policies, per-symbol SINRs, the relay's SIC decoding chain,
and the MRC-combined OMA baseline (which has no closed form). Estimates
carry standard errors so analytic values can be checked statistically.

Reproducibility: each chunk of samples draws from a Philox counter-based
stream keyed by (seed, chunk_index), so results depend only on
(seed, n_samples, chunk_size), not on execution order or thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import (
    AntennaConfig,
    ChannelDraw,
    ChannelDrawBlock,
    ChannelProfile,
    sample_channel_draws,
)
from .closed_form import PowerSplit
from .outage import OutageTargets

MIN_SAMPLES = 1_000
DEFAULT_SAMPLES = 1_000_000
DEFAULT_CHUNK = 1 << 18


@dataclass(frozen=True)
class SimConfig:
    """Sample budget, seed, and chunking for one simulation run."""

    n_samples: int = DEFAULT_SAMPLES
    seed: int = 0
    chunk_size: int = DEFAULT_CHUNK

    def __post_init__(self):
        if self.n_samples < MIN_SAMPLES:
            raise ValueError(f"n_samples must be at least {MIN_SAMPLES}, got {self.n_samples}")
        if self.chunk_size < 1:
            raise ValueError(f"chunk_size must be positive, got {self.chunk_size}")


@dataclass(frozen=True)
class Estimate:
    """Sample mean with its standard error and sample count."""

    mean: float
    std_error: float
    n: int


@dataclass(frozen=True)
class SinrBundle:
    """Instantaneous SINRs of one draw under the optimal power policy."""

    gamma_sr1: float
    gamma_sr2: float
    gamma_sd: float
    gamma_rd: float


def derive_stream(seed: int, chunk_index: int) -> np.random.Generator:
    """Independent deterministic stream for one chunk of samples."""
    return np.random.Generator(np.random.Philox(key=np.array(
        [np.uint64(seed % (1 << 64)), np.uint64(chunk_index)], dtype=np.uint64)))


def _chunks(sim: SimConfig):
    remaining = sim.n_samples
    index = 0
    while remaining > 0:
        n = min(sim.chunk_size, remaining)
        yield index, n
        index += 1
        remaining -= n


class _Accumulator:
    """Streaming mean/variance merge across chunks."""

    __slots__ = ("n", "total", "total_sq")

    def __init__(self):
        self.n = 0
        self.total = 0.0
        self.total_sq = 0.0

    def add(self, values: np.ndarray):
        self.n += values.size
        self.total += float(values.sum())
        self.total_sq += float(np.square(values).sum())

    def estimate(self) -> Estimate:
        mean = self.total / self.n
        var = max(self.total_sq - self.n * mean * mean, 0.0) / (self.n - 1)
        return Estimate(mean=mean, std_error=math.sqrt(var / self.n), n=self.n)


def _sinr_arrays(block: ChannelDrawBlock, q: float, split: PowerSplit):
    p_s = q / block.lambda_sp
    p_r = q / block.lambda_rp
    sr = block.delta_sr * p_s
    sd = block.delta_sd * p_s
    gamma_sr1 = split.a1 * sr / (split.a2 * sr + 1.0)
    gamma_sr2 = split.a2 * sr
    gamma_sd = split.a1 * sd / (split.a2 * sd + 1.0)
    gamma_rd = block.delta_rd * p_r
    return gamma_sr1, gamma_sr2, gamma_sd, gamma_rd


def instantaneous_sinrs(draw: ChannelDraw, q: float, split: PowerSplit) -> SinrBundle:
    """SINRs of a single draw with transmit powers q/lambda_sp and q/lambda_rp."""
    if not q > 0:
        raise ValueError(f"q must be positive, got {q}")
    p_s = q / draw.lambda_sp
    p_r = q / draw.lambda_rp
    sr = draw.delta_sr * p_s
    sd = draw.delta_sd * p_s
    return SinrBundle(
        gamma_sr1=split.a1 * sr / (split.a2 * sr + 1.0),
        gamma_sr2=split.a2 * sr,
        gamma_sd=split.a1 * sd / (split.a2 * sd + 1.0),
        gamma_rd=draw.delta_rd * p_r,
    )


def _mc_rates(q: float, profile: ChannelProfile, split: PowerSplit,
              antennas: AntennaConfig, sim: SimConfig):
    acc1, acc2, acc_sum = _Accumulator(), _Accumulator(), _Accumulator()
    for index, n in _chunks(sim):
        block = sample_channel_draws(profile, antennas, derive_stream(sim.seed, index), n)
        gamma_sr1, gamma_sr2, gamma_sd, gamma_rd = _sinr_arrays(block, q, split)
        c1 = 0.5 * np.log2(1.0 + np.minimum(gamma_sr1, gamma_sd))
        c2 = 0.5 * np.log2(1.0 + np.minimum(gamma_sr2, gamma_rd))
        acc1.add(c1)
        acc2.add(c2)
        acc_sum.add(c1 + c2)
    return acc1.estimate(), acc2.estimate(), acc_sum.estimate()


def mc_rate_noma(q: float, profile: ChannelProfile, split: PowerSplit,
                 antennas: AntennaConfig, sim: SimConfig) -> tuple[Estimate, Estimate]:
    """Per-symbol NOMA rate estimates (direct, relayed)."""
    est1, est2, _ = _mc_rates(q, profile, split, antennas, sim)
    return est1, est2


def mc_rate_oma(q: float, profile: ChannelProfile, antennas: AntennaConfig,
                sim: SimConfig) -> Estimate:
    """OMA baseline rate estimate; the destination MRC-combines both copies.

    The two first-hop ratios share the same interference draw, so each
    sample comes from one joint channel realization.
    """
    acc = _Accumulator()
    for index, n in _chunks(sim):
        block = sample_channel_draws(profile, antennas, derive_stream(sim.seed, index), n)
        z = np.minimum(
            block.delta_sr / block.lambda_sp,
            block.delta_sd / block.lambda_sp + block.delta_rd / block.lambda_rp,
        )
        acc.add(0.5 * np.log2(1.0 + q * z))
    return acc.estimate()


def mc_outage(targets: OutageTargets, profile: ChannelProfile, split: PowerSplit,
              antennas: AntennaConfig, sim: SimConfig) -> tuple[Estimate, Estimate]:
    """Empirical outage frequencies for both symbols.

    The direct symbol is in outage when relay or destination decode it
    below eps1. The relayed symbol's outage is the union of the three
    disjoint SIC-chain failure events at the relay and destination.
    """
    acc1, acc2 = _Accumulator(), _Accumulator()
    q = targets.q
    for index, n in _chunks(sim):
        block = sample_channel_draws(profile, antennas, derive_stream(sim.seed, index), n)
        gamma_sr1, gamma_sr2, gamma_sd, gamma_rd = _sinr_arrays(block, q, split)
        out1 = (gamma_sr1 < targets.eps1) | (gamma_sd < targets.eps1)
        relay_s1_ok = gamma_sr1 >= targets.eps1
        relay_s2_ok = gamma_sr2 >= targets.eps2
        event_i = ~relay_s1_ok
        event_ii = relay_s1_ok & ~relay_s2_ok
        event_iii = relay_s1_ok & relay_s2_ok & (gamma_rd < targets.eps2)
        acc1.add(out1.astype(float))
        acc2.add((event_i | event_ii | event_iii).astype(float))
    return acc1.estimate(), acc2.estimate()
