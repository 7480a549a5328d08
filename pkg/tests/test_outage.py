import math

import numpy as np
import pytest

from crsnoma.channels import (
    AntennaConfig,
    cdf_sc_scaled_exp_ratio,
    cdf_scaled_exp_ratio,
)
from crsnoma.closed_form import PowerSplit
from crsnoma.outage import make_targets, outage_s1, outage_s2
from crsnoma.quadrature import outage_s1_quadrature

from conftest import random_profile

# Frozen Monte-Carlo oracles (1e7 samples) at the paper scenario, q = 10,
# two antennas at relay and destination.
OUTAGE_S1_22_MC = 0.6244677
OUTAGE_S1_22_MC_SE = 0.00015
OUTAGE_S2_22_MC = 0.4960468
OUTAGE_S2_22_MC_SE = 0.00016


class TestTargets:
    def test_threshold_values(self, paper_split):
        t = make_targets(1.0, 1.0, 10.0, paper_split)
        assert t.eps1 == 3.0 and t.eps2 == 3.0
        assert t.theta1 == pytest.approx(0.5, abs=1e-14)
        assert t.theta2 == pytest.approx(3.0, abs=1e-14)
        assert t.theta == pytest.approx(3.0, abs=1e-14)
        assert t.feasible

    def test_infeasible_split(self):
        split = PowerSplit(a1=0.7, a2=0.3)
        t = make_targets(1.0, 1.0, 10.0, split)
        assert not t.feasible
        assert math.isinf(t.theta1)

    def test_rejects_nonpositive(self, paper_split):
        with pytest.raises(ValueError):
            make_targets(0.0, 1.0, 10.0, paper_split)
        with pytest.raises(ValueError):
            make_targets(1.0, 1.0, -1.0, paper_split)


class TestOutageS1:
    def test_frozen_single_antenna(self, paper_profile, paper_split):
        t = make_targets(1.0, 1.0, 10.0, paper_split)
        expected = 6.05 * 0.5 / (1 + 6.05 * 0.5)
        assert outage_s1(t, paper_profile, paper_split) \
            == pytest.approx(expected, abs=1e-12)

    def test_vanishes_at_large_q(self, paper_profile, paper_split):
        t = make_targets(1.0, 1.0, 1e9, paper_split)
        assert outage_s1(t, paper_profile, paper_split) < 1e-7

    def test_sc_reduces_to_single(self, paper_profile, paper_split):
        for q in (0.5, 5.0, 50.0):
            t = make_targets(1.0, 1.0, q, paper_split)
            assert abs(outage_s1(t, paper_profile, paper_split, AntennaConfig(1, 1))
                       - outage_s1(t, paper_profile, paper_split)) < 1e-12

    def test_sc_matches_mc_oracle(self, paper_profile, paper_split):
        t = make_targets(1.0, 1.0, 10.0, paper_split)
        p = outage_s1(t, paper_profile, paper_split, AntennaConfig(2, 2))
        assert abs(p - OUTAGE_S1_22_MC) < 3 * OUTAGE_S1_22_MC_SE

    def test_always_outage(self, paper_profile):
        split = PowerSplit(a1=0.7, a2=0.3)
        for q in (0.1, 1.0, 10.0, 1e4):
            t = make_targets(1.0, 1.0, q, split)
            assert outage_s1(t, paper_profile, split) == 1.0
            assert outage_s1(t, paper_profile, split, AntennaConfig(3, 3)) == 1.0

    def test_quadrature_check(self, paper_profile, paper_split):
        for ant in (AntennaConfig(1, 1), AntennaConfig(2, 3)):
            for q in (1.0, 10.0):
                t = make_targets(1.0, 1.0, q, paper_split)
                assert abs(outage_s1(t, paper_profile, paper_split, ant)
                           - outage_s1_quadrature(t.theta1, paper_profile, ant)) < 1e-8

    def test_monotone_in_q_and_antennas(self, paper_profile, paper_split):
        qs = [10 ** (db / 10) for db in range(-10, 31, 5)]
        for n in (1, 2, 3):
            ant = AntennaConfig(n, n)
            ps = [outage_s1(make_targets(1, 1, q, paper_split), paper_profile,
                            paper_split, ant) for q in qs]
            assert all(b < a for a, b in zip(ps, ps[1:]))
        for q in qs:
            t = make_targets(1, 1, q, paper_split)
            ps = [outage_s1(t, paper_profile, paper_split, AntennaConfig(n, n))
                  for n in (1, 2, 3)]
            assert ps[0] > ps[1] > ps[2]


class TestOutageS2:
    def test_frozen_single_antenna(self, paper_profile, paper_split):
        t = make_targets(1.0, 1.0, 10.0, paper_split)
        f1 = 5.5 * 3 / (10 + 5.5 * 3)
        f2 = 5.5 * 0.3 / (10 + 5.5 * 0.3)
        assert outage_s2(t, paper_profile, paper_split) \
            == pytest.approx(f1 + f2 - f1 * f2, abs=1e-12)

    def test_vanishes_at_large_q(self, paper_profile, paper_split):
        t = make_targets(1.0, 1.0, 1e9, paper_split)
        assert outage_s2(t, paper_profile, paper_split) < 1e-6

    def test_sc_reduces_to_single(self, paper_profile, paper_split):
        for q in (0.5, 5.0, 50.0):
            t = make_targets(1.0, 1.0, q, paper_split)
            assert abs(outage_s2(t, paper_profile, paper_split, AntennaConfig(1, 1))
                       - outage_s2(t, paper_profile, paper_split)) < 1e-12

    def test_sc_matches_mc_oracle(self, paper_profile, paper_split):
        t = make_targets(1.0, 1.0, 10.0, paper_split)
        p = outage_s2(t, paper_profile, paper_split, AntennaConfig(2, 2))
        assert abs(p - OUTAGE_S2_22_MC) < 3 * OUTAGE_S2_22_MC_SE

    def test_inclusion_exclusion_identity(self, paper_split):
        rng = np.random.default_rng(4242)
        for _ in range(50):
            profile = random_profile(rng)
            q = float(rng.uniform(0.1, 100))
            ant = AntennaConfig(int(rng.integers(1, 5)), int(rng.integers(1, 5)))
            t = make_targets(float(rng.uniform(0.1, 1.5)), float(rng.uniform(0.1, 3)),
                             q, paper_split)
            if ant.n_r == 1 and ant.n_d == 1:
                f_sr = cdf_scaled_exp_ratio(t.theta, 1.0, profile.omega_sr, profile.omega_sp)
                f_rd = cdf_scaled_exp_ratio(t.eps2 / q, 1.0, profile.omega_rd, profile.omega_rp)
            else:
                f_sr = cdf_sc_scaled_exp_ratio(t.theta, ant.n_r, 1.0,
                                               profile.omega_sr, profile.omega_sp)
                f_rd = cdf_sc_scaled_exp_ratio(t.eps2 / q, ant.n_d, 1.0,
                                               profile.omega_rd, profile.omega_rp)
            assert outage_s2(t, profile, paper_split, ant) \
                == f_sr + f_rd - f_sr * f_rd

    def test_branchwise_matches_unified(self, paper_split):
        # evaluate the two-branch event decomposition directly and compare
        # with the collapsed max-threshold form
        rng = np.random.default_rng(777)
        seen_branches = set()
        for _ in range(50):
            profile = random_profile(rng)
            q = float(rng.uniform(0.1, 100))
            r1 = float(rng.uniform(0.1, 1.5))
            r2 = float(rng.uniform(0.1, 3.0))
            t = make_targets(r1, r2, q, paper_split)
            f = lambda x: cdf_scaled_exp_ratio(x, 1.0, profile.omega_sr, profile.omega_sp)
            f_rd = cdf_scaled_exp_ratio(t.eps2 / q, 1.0, profile.omega_rd, profile.omega_rp)
            if t.theta1 < t.theta2:
                seen_branches.add("theta1<theta2")
                branchwise = f(t.theta1) + (f(t.theta2) - f(t.theta1)) \
                    + (1 - f(t.theta2)) * f_rd
            else:
                seen_branches.add("otherwise")
                branchwise = f(t.theta1) + (1 - f(t.theta1)) * f_rd
            assert outage_s2(t, profile, paper_split) \
                == pytest.approx(branchwise, abs=1e-14)
        assert seen_branches == {"theta1<theta2", "otherwise"}

    def test_monotone_in_q_and_antennas(self, paper_profile, paper_split):
        qs = [10 ** (db / 10) for db in range(-10, 31, 5)]
        for n in (1, 2, 3):
            ant = AntennaConfig(n, n)
            ps = [outage_s2(make_targets(1, 1, q, paper_split), paper_profile,
                            paper_split, ant) for q in qs]
            assert all(b < a for a, b in zip(ps, ps[1:]))
        for q in qs:
            t = make_targets(1, 1, q, paper_split)
            ps = [outage_s2(t, paper_profile, paper_split, AntennaConfig(n, n))
                  for n in (1, 2, 3)]
            assert ps[0] > ps[1] > ps[2]

    def test_infeasible_gives_certain_outage(self, paper_profile):
        # infinite first threshold drives the source-relay CDF to one
        split = PowerSplit(a1=0.7, a2=0.3)
        t = make_targets(1.0, 1.0, 10.0, split)
        assert outage_s2(t, paper_profile, split) == 1.0
        assert outage_s2(t, paper_profile, split, AntennaConfig(2, 2)) == 1.0
