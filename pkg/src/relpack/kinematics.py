"""Relativistic single-particle kinematics in natural units (hbar = c = 1).

Free dispersion omega(k) = sqrt(|k|^2 + m^2), the derived velocity and
Lorentz factors, the second-order expansion of omega(k) about a reference
momentum, and pure boosts of on-shell four-momenta. The mass m sets the
scale for everything else.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Kinematics",
    "FourMomentum",
    "omega",
    "kinematics_of",
    "dispersion_expansion",
    "boost_momentum",
]

# below this |beta0| the parallel/perpendicular split is degenerate and the
# boost is treated as the identity
ZERO_BOOST = 1e-14


def _vec3(x) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    return v


def _frozen(v: np.ndarray) -> np.ndarray:
    out = np.array(v, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Kinematics:
    """Energy, velocity vector and Lorentz factor of one momentum point.

    Satisfies omega = sqrt(|p|^2 + m^2), beta = p/omega, gamma = omega/m
    for the generating (p, m).
    """

    omega: float
    beta: np.ndarray
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "beta", _frozen(self.beta))


@dataclass(frozen=True, eq=False)
class FourMomentum:
    """On-shell four-momentum (energy, p)."""

    energy: float
    p: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p", _frozen(_vec3(self.p)))

    @classmethod
    def on_shell(cls, k, m: float) -> "FourMomentum":
        k = _vec3(k)
        return cls(omega(k, m), k)

    @property
    def mass_squared(self) -> float:
        return self.energy**2 - float(self.p @ self.p)


def omega(k, m: float) -> float:
    """Relativistic energy sqrt(|k|^2 + m^2); always >= m."""
    if m <= 0.0:
        raise ValueError(f"mass must be positive, got {m}")
    k = _vec3(k)
    return float(np.sqrt(k @ k + m * m))


def kinematics_of(p, m: float) -> Kinematics:
    """Energy, velocity beta = p/omega and gamma = omega/m at momentum p."""
    p = _vec3(p)
    w = omega(p, m)
    return Kinematics(omega=w, beta=p / w, gamma=w / m)


def dispersion_expansion(k, p, m: float, order: int) -> float:
    """Taylor expansion of omega(k) about the reference momentum p.

    order 0: omega(p)
    order 1: + beta . (k - p)
    order 2: + |k - p|^2 / 2 omega - (beta . (k - p))^2 / 2 omega

    The order-2 residual against the exact dispersion is cubic in |k - p|.
    """
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1 or 2, got {order}")
    k = _vec3(k)
    kin = kinematics_of(p, m)
    d = k - _vec3(p)
    val = kin.omega
    if order >= 1:
        val += float(kin.beta @ d)
    if order == 2:
        val += float(d @ d) / (2.0 * kin.omega) - float(kin.beta @ d) ** 2 / (2.0 * kin.omega)
    return val


def boost_momentum(fp: FourMomentum, beta0) -> FourMomentum:
    """Apply the inverse pure boost with velocity beta0 to a four-momentum.

    Components transform as

        p'_perp = p_perp
        p'_par  = gamma0 (p_par - beta0 * energy)
        energy' = gamma0 (energy - beta0 . p)

    which preserves the mass shell energy^2 - |p|^2.
    """
    b0 = _vec3(beta0)
    b0sq = float(b0 @ b0)
    if b0sq >= 1.0:
        raise ValueError(f"boost velocity must satisfy |beta0| < 1, got |beta0| = {np.sqrt(b0sq)}")
    b0mag = float(np.sqrt(b0sq))
    if b0mag < ZERO_BOOST:
        return fp
    g0 = 1.0 / np.sqrt(1.0 - b0sq)
    bhat = b0 / b0mag
    p_par = float(fp.p @ bhat)
    p_perp = fp.p - p_par * bhat
    p_par_new = g0 * (p_par - b0mag * fp.energy)
    energy_new = g0 * (fp.energy - float(b0 @ fp.p))
    return FourMomentum(energy_new, p_perp + p_par_new * bhat)
