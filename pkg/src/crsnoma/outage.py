"""Closed-form outage probabilities for both NOMA symbols.

Targets are target data rates; outage is the probability that the
instantaneous achievable rate of a symbol falls below its target. The
direct symbol is in outage when either the relay or the destination fails
to decode it; the relayed symbol's outage decomposes into three disjoint
decoding-failure events collapsing to an inclusion-exclusion of two ratio
CDFs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channels import (
    AntennaConfig,
    ChannelProfile,
    DerivedRateParams,
    cdf_sc_scaled_exp_ratio,
    cdf_scaled_exp_ratio,
)
from .closed_form import PowerSplit

# Floating-point combination of probabilities may stray outside [0,1] by
# rounding only; anything beyond this is a logic error, not rounding.
_CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class OutageTargets:
    """Target rates with their SNR and ratio-domain thresholds.

    ``theta1`` is infinite (and ``feasible`` False) when the power split
    cannot support the first target rate no matter the channel; the direct
    symbol is then always in outage.
    """

    r1: float
    r2: float
    q: float
    eps1: float
    eps2: float
    theta1: float
    theta2: float
    theta: float
    feasible: bool


def make_targets(r1: float, r2: float, q: float, split: PowerSplit) -> OutageTargets:
    """Derive all outage thresholds for target rates (r1, r2) at budget q."""
    if not (r1 > 0 and r2 > 0 and q > 0):
        raise ValueError(f"r1, r2 and q must be positive, got r1={r1}, r2={r2}, q={q}")
    eps1 = 2.0 ** (2.0 * r1) - 1.0
    eps2 = 2.0 ** (2.0 * r2) - 1.0
    margin = split.a1 - eps1 * split.a2
    feasible = margin > 0
    theta1 = eps1 / (q * margin) if feasible else math.inf
    theta2 = eps2 / (split.a2 * q)
    return OutageTargets(
        r1=r1, r2=r2, q=q,
        eps1=eps1, eps2=eps2,
        theta1=theta1, theta2=theta2,
        theta=max(theta1, theta2),
        feasible=feasible,
    )


def _clamp_probability(p: float) -> float:
    if p < -_CLAMP_TOL or p > 1.0 + _CLAMP_TOL:
        raise RuntimeError(f"probability combination out of range: {p}")
    return min(max(p, 0.0), 1.0)


def outage_s1(targets: OutageTargets, profile: ChannelProfile, split: PowerSplit,
              antennas: AntennaConfig | None = None) -> float:
    """Outage probability of the direct symbol (1 when infeasible)."""
    if not targets.feasible:
        return 1.0
    if antennas is None:
        antennas = AntennaConfig(1, 1)
    params = DerivedRateParams.from_profile(profile)
    terms = []
    for k in range(1, antennas.n_r + 1):
        for j in range(1, antennas.n_d + 1):
            c = params.xi(k, j) * profile.omega_sp * targets.theta1
            coef = (-1.0) ** (k + j) * math.comb(antennas.n_r, k) * math.comb(antennas.n_d, j)
            terms.append(coef * c / (1.0 + c))
    return _clamp_probability(math.fsum(terms))


def outage_s2(targets: OutageTargets, profile: ChannelProfile, split: PowerSplit,
              antennas: AntennaConfig | None = None) -> float:
    """Outage probability of the relayed symbol.

    Inclusion-exclusion of the source-relay ratio CDF at the unified
    threshold and the relay-destination ratio CDF at eps2/q.
    """
    if antennas is None:
        antennas = AntennaConfig(1, 1)
    x_sr = targets.theta
    x_rd = targets.eps2 / targets.q
    if antennas.n_r == 1 and antennas.n_d == 1:
        f_sr = cdf_scaled_exp_ratio(x_sr, 1.0, profile.omega_sr, profile.omega_sp)
        f_rd = cdf_scaled_exp_ratio(x_rd, 1.0, profile.omega_rd, profile.omega_rp)
    else:
        f_sr = cdf_sc_scaled_exp_ratio(x_sr, antennas.n_r, 1.0,
                                       profile.omega_sr, profile.omega_sp)
        f_rd = cdf_sc_scaled_exp_ratio(x_rd, antennas.n_d, 1.0,
                                       profile.omega_rd, profile.omega_rp)
    return _clamp_probability(f_sr + f_rd - f_sr * f_rd)
