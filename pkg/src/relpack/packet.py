"""Normalized Gaussian momentum-space wavepackets.

The packet amplitude is real and positive,

    Psi(k) = (2 pi sigma_p^2)^(-3/4) exp(-|k - p|^2 / 4 sigma_p^2),

with unit L2 norm. Its t = 0 position-space counterpart (for a packet at
rest) is the minimal Gaussian of width sigma_x = 1/(2 sigma_p), so the
width product sigma_x sigma_p = 1/2 holds exactly. Phases that would not
survive in the probability density are never materialized.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kinematics import Kinematics, kinematics_of

__all__ = [
    "GaussianPacket",
    "momentum_amplitude",
    "rest_position_amplitude_t0",
    "orthonormal_triad",
]


@dataclass(frozen=True, eq=False)
class GaussianPacket:
    """Isotropic Gaussian packet: mass, mean momentum vector and momentum width."""

    mass: float
    mean_momentum: np.ndarray
    sigma_p: float

    def __post_init__(self):
        if self.mass <= 0.0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        if self.sigma_p <= 0.0:
            raise ValueError(f"sigma_p must be positive, got {self.sigma_p}")
        p = np.asarray(self.mean_momentum, dtype=float)
        if p.shape != (3,):
            raise ValueError(f"mean_momentum must be a 3-vector, got shape {p.shape}")
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "mean_momentum", p)

    @classmethod
    def from_gamma_epsilon(cls, mass: float, gamma: float, epsilon: float,
                           direction=(0.0, 0.0, 1.0)) -> "GaussianPacket":
        """Build from the Lorentz factor and the relative momentum width
        epsilon = sigma_p/|p|. Requires gamma > 1 so that |p| > 0."""
        if gamma <= 1.0:
            raise ValueError(f"gamma must exceed 1 for a moving packet, got {gamma}")
        if epsilon <= 0.0:
            raise ValueError(f"epsilon must be positive, got {epsilon}")
        d = np.asarray(direction, dtype=float)
        norm = np.linalg.norm(d)
        if norm == 0.0:
            raise ValueError("direction must be a nonzero vector")
        pmag = mass * np.sqrt(gamma * gamma - 1.0)
        return cls(mass=mass, mean_momentum=pmag * d / norm, sigma_p=epsilon * pmag)

    @property
    def sigma_x(self) -> float:
        """Spatial width at t = 0; sigma_x * sigma_p = 1/2 exactly."""
        return 0.5 / self.sigma_p

    @property
    def momentum_norm(self) -> float:
        return float(np.linalg.norm(self.mean_momentum))

    @property
    def epsilon(self) -> float:
        """Relative momentum width sigma_p/|p|; undefined for a rest packet."""
        pmag = self.momentum_norm
        if pmag == 0.0:
            raise ValueError("epsilon = sigma_p/|p| is undefined for a rest packet")
        return self.sigma_p / pmag

    @property
    def is_at_rest(self) -> bool:
        return self.momentum_norm == 0.0

    def kinematics(self) -> Kinematics:
        return kinematics_of(self.mean_momentum, self.mass)

    def direction(self) -> np.ndarray:
        """Unit vector along the mean momentum; +z for a rest packet."""
        pmag = self.momentum_norm
        if pmag == 0.0:
            return np.array([0.0, 0.0, 1.0])
        return self.mean_momentum / pmag


def momentum_amplitude(packet: GaussianPacket, k) -> float:
    """Momentum-space amplitude at k; positive, maximal at the mean momentum."""
    k = np.asarray(k, dtype=float)
    d = k - packet.mean_momentum
    sp2 = packet.sigma_p**2
    return float((2.0 * np.pi * sp2) ** (-0.75) * np.exp(-(d @ d) / (4.0 * sp2)))


def rest_position_amplitude_t0(packet: GaussianPacket, x) -> float:
    """t = 0 position amplitude of a rest packet (real modulus, phase dropped).

    Only the rest packet has this closed form; for a moving packet sample the
    density through the quadrature oracle instead.
    """
    if packet.momentum_norm != 0.0:
        raise ValueError(
            "closed-form position amplitude requires a rest packet; "
            "use oracle.density_profile for a moving one"
        )
    x = np.asarray(x, dtype=float)
    sx2 = packet.sigma_x**2
    return float((2.0 * np.pi * sx2) ** (-0.75) * np.exp(-(x @ x) / (4.0 * sx2)))


def orthonormal_triad(direction) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Deterministic right-handed triad (e_par, e1, e2) with e_par along `direction`.

    The first transverse axis is seeded from the coordinate axis with the
    smallest |component| of e_par (smallest-component pivot), so the triad is
    reproducible for any input direction.
    """
    d = np.asarray(direction, dtype=float)
    norm = np.linalg.norm(d)
    if norm == 0.0:
        raise ValueError("cannot build a triad from the zero vector")
    e_par = d / norm
    pivot = np.zeros(3)
    pivot[int(np.argmin(np.abs(e_par)))] = 1.0
    e1 = pivot - (pivot @ e_par) * e_par
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(e_par, e1)
    return e_par, e1, e2
