import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from relpack import GaussianPacket, QuadratureSpec

# every property-test run draws the same examples; no randomness anywhere
settings.register_profile(
    "deterministic",
    derandomize=True,
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")


@pytest.fixture(scope="session")
def figure_packet():
    """The canonical moving packet: m = 1, gamma = 2, epsilon = 0.01."""
    return GaussianPacket.from_gamma_epsilon(1.0, 2.0, 0.01)


@pytest.fixture(scope="session")
def rest_packet():
    return GaussianPacket(mass=1.0, mean_momentum=np.zeros(3), sigma_p=0.005)


@pytest.fixture(scope="session")
def default_quad():
    return QuadratureSpec()


def scaled_time(packet, bt_over_sigma_x: float) -> float:
    """Physical time for a given beta*t/sigma_x."""
    beta = float(np.linalg.norm(packet.kinematics().beta))
    return bt_over_sigma_x * packet.sigma_x / beta
