"""Numpy implementation of the hot quadrature kernels.

This is the import-time fallback for the compiled extension in
``_kernels.pyx`` and the reference its results are compared against. Both
backends implement the same three reductions with the same signatures:

* velocity_moment_sums   -- weighted moments of v(k) = k/omega(k) on a
                            tensor-product momentum grid
* boosted_gradient_sums  -- norm and gradient outer-product sums of the
                            boosted rest-packet amplitude (boost along +z)
* oscillatory_profile_sums -- the reduced two-dimensional oscillatory
                            integral for on-axis position densities, with a
                            J0 kernel in the transverse wavenumber

Accumulation happens slab by slab along the first axis in a fixed order, so
results are bit-reproducible for identical inputs.
"""
from __future__ import annotations

import numpy as np
from scipy.special import j0

__all__ = ["velocity_moment_sums", "boosted_gradient_sums", "oscillatory_profile_sums"]


def velocity_moment_sums(nx, ny, nz, wx, wy, wz, mass):
    """Accumulate s0 = sum w, s1_i = sum w v_i, s2_ij = sum w v_i v_j over the
    grid nx x ny x nz with separable weights wx, wy, wz (density included)."""
    nx = np.asarray(nx, float)
    ny = np.asarray(ny, float)
    nz = np.asarray(nz, float)
    wx = np.asarray(wx, float)
    wy = np.asarray(wy, float)
    wz = np.asarray(wz, float)
    m2 = mass * mass
    ky = ny[:, None]
    kz = nz[None, :]
    wyz = wy[:, None] * wz[None, :]
    ky2kz2 = ky * ky + kz * kz
    s0 = 0.0
    s1 = np.zeros(3)
    s2 = np.zeros((3, 3))
    for i in range(nx.size):
        kx = nx[i]
        w = wx[i] * wyz
        inv_om = 1.0 / np.sqrt(kx * kx + ky2kz2 + m2)
        vx = kx * inv_om
        vy = ky * inv_om
        vz = kz * inv_om
        s0 += np.sum(w)
        wvx = w * vx
        wvy = w * vy
        wvz = w * vz
        s1[0] += np.sum(wvx)
        s1[1] += np.sum(wvy)
        s1[2] += np.sum(wvz)
        s2[0, 0] += np.sum(wvx * vx)
        s2[0, 1] += np.sum(wvx * vy)
        s2[0, 2] += np.sum(wvx * vz)
        s2[1, 1] += np.sum(wvy * vy)
        s2[1, 2] += np.sum(wvy * vz)
        s2[2, 2] += np.sum(wvz * vz)
    s2[1, 0] = s2[0, 1]
    s2[2, 0] = s2[0, 2]
    s2[2, 1] = s2[1, 2]
    return s0, s1, s2


def boosted_gradient_sums(nx, ny, nz, wx, wy, wz, mass, sigma_p, beta0):
    """Norm and gradient sums of the boosted rest packet, boost along +z.

    Returns (s0, g) with s0 = sum w psi'^2 and g_ij = sum w (d_i psi')(d_j psi'),
    where psi'(p) = sqrt(gamma0 (1 - beta0 p_z/omega)) Psi(inverse-boosted p)
    and Psi is the rest Gaussian of width sigma_p. Weights are plain
    quadrature weights; the amplitude itself supplies the decay.
    """
    nx = np.asarray(nx, float)
    ny = np.asarray(ny, float)
    nz = np.asarray(nz, float)
    wx = np.asarray(wx, float)
    wy = np.asarray(wy, float)
    wz = np.asarray(wz, float)
    m2 = mass * mass
    g0 = 1.0 / np.sqrt(1.0 - beta0 * beta0)
    norm = (2.0 * np.pi * sigma_p * sigma_p) ** (-0.75)
    inv4sp2 = 1.0 / (4.0 * sigma_p * sigma_p)
    py = ny[:, None]
    pz = nz[None, :]
    wyz = wy[:, None] * wz[None, :]
    py2pz2 = py * py + pz * pz
    s0 = 0.0
    g = np.zeros((3, 3))
    for i in range(nx.size):
        px = nx[i]
        w = wx[i] * wyz
        om = np.sqrt(px * px + py2pz2 + m2)
        inv_om = 1.0 / om
        jac2 = g0 * (1.0 - beta0 * pz * inv_om)
        jac = np.sqrt(jac2)
        qz = g0 * (pz - beta0 * om)
        q2 = px * px + py * py + qz * qz
        psi_g = norm * np.exp(-q2 * inv4sp2)
        psi = jac * psi_g

        # dJ/dp_i = -g0 beta0 d(pz/om)/dp_i / (2J)
        dpz_om_dx = -pz * px * inv_om**3
        dpz_om_dy = -pz * py * inv_om**3
        dpz_om_dz = inv_om - pz * pz * inv_om**3
        pref = -g0 * beta0 / (2.0 * jac)
        djx = pref * dpz_om_dx
        djy = pref * dpz_om_dy
        djz = pref * dpz_om_dz

        # dq^2/dp_i with dqz/dp_i = g0 (delta_iz - beta0 p_i/om)
        dq2x = 2.0 * px + 2.0 * qz * g0 * (-beta0 * px * inv_om)
        dq2y = 2.0 * py + 2.0 * qz * g0 * (-beta0 * py * inv_om)
        dq2z = 2.0 * qz * g0 * (1.0 - beta0 * pz * inv_om)

        dx = djx * psi_g - psi * dq2x * inv4sp2
        dy = djy * psi_g - psi * dq2y * inv4sp2
        dz = djz * psi_g - psi * dq2z * inv4sp2

        s0 += np.sum(w * psi * psi)
        g[0, 0] += np.sum(w * dx * dx)
        g[0, 1] += np.sum(w * dx * dy)
        g[0, 2] += np.sum(w * dx * dz)
        g[1, 1] += np.sum(w * dy * dy)
        g[1, 2] += np.sum(w * dy * dz)
        g[2, 2] += np.sum(w * dz * dz)
    g[1, 0] = g[0, 1]
    g[2, 0] = g[0, 2]
    g[2, 1] = g[1, 2]
    return s0, g


def oscillatory_profile_sums(rho, wrho, s, ws, pmag, mass, t, xpar, xperp):
    """Reduced position-amplitude integral at points (xpar_j, |xperp_j|),

        psi_j = sum_a sum_b wrho_a ws_b J0(sqrt(s_b) xperp_j)
                * exp(i (rho_a xpar_j - omega_ab t)),

    with omega_ab = sqrt((pmag + rho_a)^2 + s_b + mass^2). Weights carry the
    Gaussian envelope and all constant prefactors; the result equals the
    position amplitude up to a global phase, so its modulus squared is the
    density.
    """
    rho = np.asarray(rho, float)
    wrho = np.asarray(wrho, float)
    s = np.asarray(s, float)
    ws = np.asarray(ws, float)
    xpar = np.asarray(xpar, float)
    xperp = np.asarray(xperp, float)
    kpar = pmag + rho
    om = np.sqrt(kpar[:, None] ** 2 + s[None, :] + mass * mass)
    w2 = wrho[:, None] * ws[None, :]
    sqrt_s = np.sqrt(s)
    out = np.empty(xpar.size, dtype=complex)
    for jth in range(xpar.size):
        bess = j0(sqrt_s * abs(xperp[jth]))
        phase = rho[:, None] * xpar[jth] - om * t
        out[jth] = np.sum(w2 * bess[None, :] * np.exp(1j * phase))
    return out
