"""Closed-form spreading laws for the free relativistic Gaussian packet.

The spatial widths parallel and transverse to the mean motion grow as

    sigma_par(t)  = sqrt(sigma_x^2 + [sigma_p t / (omega gamma^2)]^2)
    sigma_perp(t) = sqrt(sigma_x^2 + [sigma_p t / omega]^2)

where omega and gamma refer to the mean momentum. These internal forms are
algebraically identical to the usual (sigma_p/|p|) beta t writing but stay
regular as |p| -> 0, where both widths coincide (isotropic spreading). The
parallel growth rate is suppressed by 1/gamma^2, which gives the exact
anisotropy identity

    sigma_perp(t)^2 - sigma_x^2 = gamma^4 (sigma_par(t)^2 - sigma_x^2).

The laws derive from a second-order truncation of the dispersion relation,
valid for |t| well below the horizon T = omega/sigma_p^2. Evaluation beyond
a configurable fraction of T still returns a value but emits a
ValidityWarning, since curve plotting legitimately needs the tails.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .packet import GaussianPacket, orthonormal_triad

__all__ = [
    "ValidityWarning",
    "SpreadingCurve",
    "validity_horizon",
    "no_spread_horizon",
    "sigma_parallel",
    "sigma_perp",
    "gaussian_integral",
    "envelope_exponent",
    "spreading_curve",
]

# fraction of the horizon T beyond which evaluation warns; at |t| = 0.1 T the
# neglected third-order phase is down by ~0.1 epsilon relative to the kept one
VALIDITY_WARN_FRACTION = 0.1


class ValidityWarning(UserWarning):
    """Spreading law evaluated beyond its validity window |t| << T."""


@dataclass(eq=False)
class SpreadingCurve:
    """Time-sampled width pair. With scaled=True, times are beta*t/sigma_x
    and the widths are ratios sigma/sigma_x."""

    times: np.ndarray
    sigma_par: np.ndarray
    sigma_perp: np.ndarray
    scaled: bool


def validity_horizon(packet: GaussianPacket) -> float:
    """Time scale T = omega/sigma_p^2 bounding the law's derivation."""
    return packet.kinematics().omega / packet.sigma_p**2


def no_spread_horizon(packet: GaussianPacket) -> float:
    """Largest time with essentially no spreading: beta*T_ns = sigma_x/sqrt(epsilon).

    At t = T_ns the transverse width has grown only to sigma_x sqrt(1 + epsilon).
    Undefined for a rest packet (epsilon requires |p| > 0).
    """
    eps = packet.epsilon
    beta = float(np.linalg.norm(packet.kinematics().beta))
    return packet.sigma_x / (np.sqrt(eps) * beta)


def _check_validity(packet, t, warn, warn_fraction):
    if not warn:
        return
    horizon = validity_horizon(packet)
    if abs(t) > warn_fraction * horizon:
        warnings.warn(
            f"|t| = {abs(t):g} exceeds {warn_fraction:g} * T = {warn_fraction * horizon:g}; "
            "the closed-form law is an extrapolation here",
            ValidityWarning,
            stacklevel=3,
        )


def sigma_parallel(packet: GaussianPacket, t: float, *, warn: bool = True,
                   warn_fraction: float = VALIDITY_WARN_FRACTION) -> float:
    """Spatial width along the mean motion at time t."""
    _check_validity(packet, t, warn, warn_fraction)
    kin = packet.kinematics()
    rate = packet.sigma_p / (kin.omega * kin.gamma**2)
    return float(np.hypot(packet.sigma_x, rate * t))


def sigma_perp(packet: GaussianPacket, t: float, *, warn: bool = True,
               warn_fraction: float = VALIDITY_WARN_FRACTION) -> float:
    """Spatial width transverse to the mean motion at time t."""
    _check_validity(packet, t, warn, warn_fraction)
    rate = packet.sigma_p / packet.kinematics().omega
    return float(np.hypot(packet.sigma_x, rate * t))


def gaussian_integral(sigma: float, xi: float, tau: float) -> complex:
    """Closed form of the chirped Gaussian integral

        integral dz exp(-z^2/sigma^2) exp(i xi z/sigma) exp(-i tau z^2/sigma^2)
            = sqrt(pi sigma^2 / (1 + i tau)) exp(-xi^2 / 4(1 + i tau))

    with the principal square root.
    """
    if sigma <= 0.0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    denom = 1.0 + 1j * tau
    return complex(np.sqrt(np.pi * sigma**2 / denom) * np.exp(-(xi**2) / (4.0 * denom)))


def envelope_exponent(packet: GaussianPacket, t: float, x, *, warn: bool = True) -> float:
    """Exponent f(x) of the position amplitude envelope |psi| ~ exp(f(x)),

        f(x) = -(x_par - beta t)^2 / 4 sigma_par(t)^2 - |x_perp|^2 / 4 sigma_perp(t)^2,

    zero at the moving center and negative elsewhere. The probability density
    envelope is exp(2 f(x)).
    """
    x = np.asarray(x, dtype=float)
    kin = packet.kinematics()
    beta_mag = float(np.linalg.norm(kin.beta))
    e_par, _, _ = orthonormal_triad(packet.direction())
    x_par = float(x @ e_par)
    x_perp_sq = float(x @ x) - x_par**2
    s_par = sigma_parallel(packet, t, warn=warn)
    s_perp = sigma_perp(packet, t, warn=False)
    return -((x_par - beta_mag * t) ** 2) / (4.0 * s_par**2) - x_perp_sq / (4.0 * s_perp**2)


def spreading_curve(packet: GaussianPacket, times, *, scaled: bool = False,
                    warn: bool = False) -> SpreadingCurve:
    """Sample both widths over a time grid.

    With scaled=True the grid is interpreted as beta*t/sigma_x and the output
    widths are sigma/sigma_x ratios (requires a moving packet).
    """
    times = np.asarray(times, dtype=float)
    if scaled:
        beta_mag = float(np.linalg.norm(packet.kinematics().beta))
        if beta_mag == 0.0:
            raise ValueError("scaled times beta*t/sigma_x require a moving packet")
        phys_times = times * packet.sigma_x / beta_mag
    else:
        phys_times = times
    s_par = np.array([sigma_parallel(packet, t, warn=warn) for t in phys_times])
    s_perp = np.array([sigma_perp(packet, t, warn=warn) for t in phys_times])
    if scaled:
        s_par = s_par / packet.sigma_x
        s_perp = s_perp / packet.sigma_x
    return SpreadingCurve(times=times.copy(), sigma_par=s_par, sigma_perp=s_perp, scaled=scaled)
