import numpy as np
import pytest

from crsnoma import AntennaConfig, ChannelProfile, PowerSplit


@pytest.fixture(scope="session")
def paper_profile():
    return ChannelProfile(omega_sr=10.0, omega_sd=1.0, omega_rd=10.0,
                          omega_sp=5.5, omega_rp=5.5)


@pytest.fixture(scope="session")
def paper_split():
    return PowerSplit.from_a2(0.1)


@pytest.fixture
def single_antenna():
    return AntennaConfig(1, 1)


def ks_distance(samples: np.ndarray, cdf) -> float:
    """Kolmogorov-Smirnov distance between an empirical sample and a CDF."""
    s = np.sort(np.asarray(samples))
    n = s.size
    f = np.asarray(cdf(s))
    i = np.arange(1, n + 1)
    return max(float(np.max(f - (i - 1) / n)), float(np.max(i / n - f)))


def random_profile(rng: np.random.Generator) -> ChannelProfile:
    """Random valid channel profile (direct link weaker than relay link)."""
    omega_sd = float(rng.uniform(0.2, 5.0))
    omega_sr = omega_sd * float(rng.uniform(1.5, 20.0))
    return ChannelProfile(
        omega_sr=omega_sr,
        omega_sd=omega_sd,
        omega_rd=float(rng.uniform(0.2, 20.0)),
        omega_sp=float(rng.uniform(0.2, 20.0)),
        omega_rp=float(rng.uniform(0.2, 20.0)),
    )
