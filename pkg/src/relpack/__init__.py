"""relpack: spreading and Lorentz contraction of relativistic Gaussian wavepackets.

Closed-form spreading laws for the spatial widths of a free, massive,
spinless wavepacket, the Lorentz-boosted packet and its measured
contraction, and brute-force quadrature oracles that validate every closed
form numerically. Natural units hbar = c = 1 throughout; the mass sets the
scale.
"""

from .boost import (
    BoostSpec,
    ContractionReport,
    boosted_momentum_amplitude,
    boosted_norm,
    boosted_widths_quadratic,
    jacobian_factor,
    measure_contraction,
)
from .kinematics import (
    FourMomentum,
    Kinematics,
    boost_momentum,
    dispersion_expansion,
    kinematics_of,
    omega,
)
from .oracle import (
    DensityProfile,
    MomentReport,
    density_at,
    density_norm,
    density_profile,
    measured_curve,
    position_moments,
    profile_variance,
    velocity_moments,
)
from .packet import GaussianPacket, momentum_amplitude, orthonormal_triad, rest_position_amplitude_t0
from .quadrature import PhaseResolutionError, QuadratureSpec
from .spreading import (
    SpreadingCurve,
    ValidityWarning,
    envelope_exponent,
    gaussian_integral,
    no_spread_horizon,
    sigma_parallel,
    sigma_perp,
    spreading_curve,
    validity_horizon,
)

__version__ = "0.1.0"

__all__ = [
    "BoostSpec",
    "ContractionReport",
    "DensityProfile",
    "FourMomentum",
    "GaussianPacket",
    "Kinematics",
    "MomentReport",
    "PhaseResolutionError",
    "QuadratureSpec",
    "SpreadingCurve",
    "ValidityWarning",
    "__version__",
    "boost_momentum",
    "boosted_momentum_amplitude",
    "boosted_norm",
    "boosted_widths_quadratic",
    "density_at",
    "density_norm",
    "density_profile",
    "dispersion_expansion",
    "envelope_exponent",
    "gaussian_integral",
    "jacobian_factor",
    "kinematics_of",
    "measure_contraction",
    "measured_curve",
    "momentum_amplitude",
    "no_spread_horizon",
    "omega",
    "orthonormal_triad",
    "position_moments",
    "profile_variance",
    "rest_position_amplitude_t0",
    "sigma_parallel",
    "sigma_perp",
    "spreading_curve",
    "validity_horizon",
    "velocity_moments",
]
