"""Closed-form average achievable rates for the NOMA relaying system.

Every rate here is an exact expression in the link statistics; the
recurring u*log2(u/v)/(u-v) term is evaluated through a singularity-safe
kernel, and parameter combinations that make a closed-form denominator
degenerate fall back to adaptive quadrature of the defining integral
(tagged on the returned report).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channels import AntennaConfig, ChannelProfile, DerivedRateParams
from .quadrature import rate_s1_quadrature, rate_s2_quadrature

LOG2E = math.log2(math.e)

CLOSED_FORM = "closed_form"
QUADRATURE_FALLBACK = "quadrature_fallback"

# Relative closeness at which a closed-form denominator counts as degenerate.
DEGENERACY_RTOL = 1e-8

# Relative closeness at which the kernel switches to its series expansion.
_KERNEL_SERIES_RTOL = 1e-8


@dataclass(frozen=True)
class PowerSplit:
    """NOMA power-allocation pair; a1 + a2 = 1 with a1 > a2 > 0."""

    a1: float
    a2: float

    def __post_init__(self):
        if abs(self.a1 + self.a2 - 1.0) > 1e-12:
            raise ValueError(f"a1 + a2 must equal 1, got {self.a1 + self.a2}")
        if not self.a1 > self.a2 > 0:
            raise ValueError(f"need a1 > a2 > 0, got a1={self.a1}, a2={self.a2}")

    @classmethod
    def from_a2(cls, a2: float) -> "PowerSplit":
        return cls(a1=1.0 - a2, a2=a2)


@dataclass(frozen=True)
class RateReport:
    """Average achievable rates (bits/s/Hz) with per-component method tags."""

    rate_s1: float
    rate_s2: float
    rate_sum: float
    method_s1: str
    method_s2: str


def log_ratio_kernel(u: float, v: float) -> float:
    """u * log2(u/v) / (u - v), continuous across the removable u = v point.

    Near u = v direct evaluation loses ~8 digits to cancellation, so a
    second-order series in (u - v)/v is used instead.
    """
    if not (u > 0 and v > 0):
        raise ValueError(f"kernel arguments must be positive, got u={u}, v={v}")
    d = u - v
    if abs(d) <= _KERNEL_SERIES_RTOL * max(u, v):
        s = d / v
        return LOG2E * (1.0 + 0.5 * s - s * s / 6.0)
    return u * math.log2(u / v) / d


def _check_q(q: float):
    if not (q > 0 and math.isfinite(q)):
        raise ValueError(f"q must be positive and finite, got {q}")


def _degenerate(a: float, b: float) -> bool:
    return abs(a - b) <= DEGENERACY_RTOL * max(abs(a), abs(b))


def rate_s1(q: float, profile: ChannelProfile, split: PowerSplit) -> float:
    """Average rate of the direct NOMA symbol, single antenna."""
    _check_q(q)
    c = DerivedRateParams.from_profile(profile).phi * profile.omega_sp
    return 0.5 * (log_ratio_kernel(q, c) - log_ratio_kernel(split.a2 * q, c))


def _rate_s2_denominators(q: float, profile: ChannelProfile, a2: float):
    return (
        (profile.omega_rd * profile.omega_sp, a2 * profile.omega_rp * profile.omega_sr),
        (profile.omega_rd * q, profile.omega_rp),
        (profile.omega_sp, a2 * profile.omega_sr * q),
    )


def rate_s2_is_degenerate(q: float, profile: ChannelProfile, split: PowerSplit) -> bool:
    """True when a denominator of the single-antenna closed form degenerates."""
    return any(_degenerate(a, b) for a, b in _rate_s2_denominators(q, profile, split.a2))


def rate_s2(q: float, profile: ChannelProfile, split: PowerSplit) -> float:
    """Average rate of the relayed NOMA symbol, single antenna.

    Falls back to quadrature of the survival-function integral when the
    closed form degenerates; use :func:`rate_s2_is_degenerate` (or
    :func:`sum_rate`) to learn which path was taken.
    """
    _check_q(q)
    a2 = split.a2
    if rate_s2_is_degenerate(q, profile, split):
        return rate_s2_quadrature(q, profile, a2)
    osr, ord_, osp, orp = (profile.omega_sr, profile.omega_rd,
                           profile.omega_sp, profile.omega_rp)
    d1 = ord_ * osp - a2 * orp * osr
    d2 = ord_ * q - orp
    d3 = osp - a2 * osr * q
    bracket = (
        orp * osp * math.log2(a2 * orp * osr / (ord_ * osp))
        + a2 * orp * osr * q * math.log2(ord_ * q / orp)
        - ord_ * osp * q * math.log2(a2 * osr * q / osp)
    )
    return 0.5 * a2 * ord_ * osr * q * bracket / (d1 * d2 * d3)


def rate_s1_sc(q: float, profile: ChannelProfile, split: PowerSplit,
               antennas: AntennaConfig) -> float:
    """Average rate of the direct NOMA symbol with selection combining."""
    _check_q(q)
    params = DerivedRateParams.from_profile(profile)
    a2q = split.a2 * q
    terms = []
    for k in range(1, antennas.n_r + 1):
        for j in range(1, antennas.n_d + 1):
            c = params.xi(k, j) * profile.omega_sp
            coef = (-1.0) ** (k + j) * math.comb(antennas.n_r, k) * math.comb(antennas.n_d, j)
            terms.append(coef * (log_ratio_kernel(q, c) - log_ratio_kernel(a2q, c)))
    return 0.5 * math.fsum(terms)


def rate_s2_sc_is_degenerate(q: float, profile: ChannelProfile, split: PowerSplit,
                             antennas: AntennaConfig) -> bool:
    """True when any term of the SC closed form has a degenerate denominator."""
    a2 = split.a2
    osr, ord_, osp, orp = (profile.omega_sr, profile.omega_rd,
                           profile.omega_sp, profile.omega_rp)
    for k in range(1, antennas.n_r + 1):
        if _degenerate(a2 * osr * q, k * osp):
            return True
    for j in range(1, antennas.n_d + 1):
        if _degenerate(ord_ * q, j * orp):
            return True
    for k in range(1, antennas.n_r + 1):
        for j in range(1, antennas.n_d + 1):
            if _degenerate(k * ord_ * osp, j * a2 * orp * osr):
                return True
    return False


def rate_s2_sc(q: float, profile: ChannelProfile, split: PowerSplit,
               antennas: AntennaConfig) -> float:
    """Average rate of the relayed NOMA symbol with selection combining."""
    _check_q(q)
    a2 = split.a2
    if rate_s2_sc_is_degenerate(q, profile, split, antennas):
        return rate_s2_quadrature(q, profile, a2, antennas)
    osr, ord_, osp, orp = (profile.omega_sr, profile.omega_rd,
                           profile.omega_sp, profile.omega_rp)
    terms = []
    for k in range(1, antennas.n_r + 1):
        coef = (-1.0) ** (k - 1) * math.comb(antennas.n_r, k)
        terms.append(coef * log_ratio_kernel(a2 * osr * q, k * osp))
    for j in range(1, antennas.n_d + 1):
        coef = (-1.0) ** (j - 1) * math.comb(antennas.n_d, j)
        terms.append(coef * log_ratio_kernel(ord_ * q, j * orp))
    for k in range(1, antennas.n_r + 1):
        for j in range(1, antennas.n_d + 1):
            coef = (-1.0) ** (k + j) * math.comb(antennas.n_r, k) * math.comb(antennas.n_d, j)
            d = k * ord_ * osp - j * a2 * orp * osr
            cross = (j * a2 * orp * osr * log_ratio_kernel(a2 * osr * q, k * osp)
                     - k * ord_ * osp * log_ratio_kernel(ord_ * q, j * orp)) / d
            terms.append(coef * cross)
    return 0.5 * math.fsum(terms)


def sum_rate(q: float, profile: ChannelProfile, split: PowerSplit,
             antennas: AntennaConfig | None = None) -> RateReport:
    """Per-symbol and sum rates with the evaluation method of each component."""
    if antennas is None:
        antennas = AntennaConfig(1, 1)
    single = antennas.n_r == 1 and antennas.n_d == 1
    if single:
        r1 = rate_s1(q, profile, split)
        s2_fallback = rate_s2_is_degenerate(q, profile, split)
        r2 = rate_s2(q, profile, split)
    else:
        r1 = rate_s1_sc(q, profile, split, antennas)
        s2_fallback = rate_s2_sc_is_degenerate(q, profile, split, antennas)
        r2 = rate_s2_sc(q, profile, split, antennas)
    return RateReport(
        rate_s1=r1,
        rate_s2=r2,
        rate_sum=r1 + r2,
        method_s1=CLOSED_FORM,
        method_s2=QUADRATURE_FALLBACK if s2_fallback else CLOSED_FORM,
    )
