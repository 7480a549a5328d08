"""Adaptive-quadrature evaluation of the defining rate integrals.

These are the integral forms the closed-form expressions were derived
from. They serve two purposes: the numerical fallback when a closed-form
denominator degenerates, and an independent cross-check of every
closed-form rate.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

from .channels import (
    AntennaConfig,
    ChannelProfile,
    DerivedRateParams,
    pdf_min_over_exp_ratio,
    pdf_sc_min_over_exp_ratio,
    survival_Y,
    survival_sc_Y,
)

_QUAD_KW = dict(epsabs=1e-10, epsrel=1e-10, limit=500)

LOG2E = math.log2(math.e)


def _quad_inf(f) -> float:
    val, _err = quad(f, 0.0, np.inf, **_QUAD_KW)
    return val


def rate_s1_quadrature(q: float, profile: ChannelProfile, a2: float,
                       antennas: AntennaConfig | None = None) -> float:
    """Direct-link rate as a quadrature over the ratio density."""
    params = DerivedRateParams.from_profile(profile)
    if antennas is None or (antennas.n_r == 1 and antennas.n_d == 1):
        def pdf(x):
            return pdf_min_over_exp_ratio(x, params.phi, profile.omega_sp)
    else:
        def pdf(x):
            return pdf_sc_min_over_exp_ratio(x, antennas, params, profile.omega_sp)

    def integrand(x):
        return 0.5 * (np.log2(1.0 + q * x) - np.log2(1.0 + q * a2 * x)) * pdf(x)

    return _quad_inf(integrand)


def rate_s2_quadrature(q: float, profile: ChannelProfile, a2: float,
                       antennas: AntennaConfig | None = None) -> float:
    """Relayed-symbol rate as a quadrature over the joint survival function."""
    if antennas is None or (antennas.n_r == 1 and antennas.n_d == 1):
        def surv(x):
            return survival_Y(x, a2, profile)
    else:
        def surv(x):
            return survival_sc_Y(x, a2, antennas, profile)

    def integrand(x):
        return surv(x) / (1.0 + q * x)

    return 0.5 * LOG2E * q * _quad_inf(integrand)


def outage_s1_quadrature(theta1: float, profile: ChannelProfile,
                         antennas: AntennaConfig | None = None) -> float:
    """Outage of the direct symbol as the integral of the ratio density."""
    if not math.isfinite(theta1):
        return 1.0
    params = DerivedRateParams.from_profile(profile)
    if antennas is None or (antennas.n_r == 1 and antennas.n_d == 1):
        def pdf(x):
            return pdf_min_over_exp_ratio(x, params.phi, profile.omega_sp)
    else:
        def pdf(x):
            return pdf_sc_min_over_exp_ratio(x, antennas, params, profile.omega_sp)
    val, _err = quad(pdf, 0.0, theta1, **_QUAD_KW)
    return val
