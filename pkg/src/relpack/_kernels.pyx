# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementation of the hot quadrature kernels.

Mirrors ``_kernels_py`` exactly (same signatures, same point-wise math);
only the accumulation order differs (strictly sequential here), so the two
backends agree to rounding. Selected automatically by ``relpack.kernels``
when the extension is built.
"""
import numpy as np

from libc.math cimport sqrt, exp, cos, sin, fabs
from scipy.special.cython_special cimport j0 as c_j0


def velocity_moment_sums(nx, ny, nz, wx, wy, wz, double mass):
    cdef double[::1] ax = np.ascontiguousarray(nx, dtype=np.float64)
    cdef double[::1] ay = np.ascontiguousarray(ny, dtype=np.float64)
    cdef double[::1] az = np.ascontiguousarray(nz, dtype=np.float64)
    cdef double[::1] vx_w = np.ascontiguousarray(wx, dtype=np.float64)
    cdef double[::1] vy_w = np.ascontiguousarray(wy, dtype=np.float64)
    cdef double[::1] vz_w = np.ascontiguousarray(wz, dtype=np.float64)
    cdef Py_ssize_t ni = ax.shape[0], nj = ay.shape[0], nk = az.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double m2 = mass * mass
    cdef double kx, ky, kz, w, wxy, inv_om, vx, vy, vz, wvx, wvy, wvz
    cdef double s0 = 0.0
    cdef double s1x = 0.0, s1y = 0.0, s1z = 0.0
    cdef double sxx = 0.0, sxy = 0.0, sxz = 0.0, syy = 0.0, syz = 0.0, szz = 0.0

    for i in range(ni):
        kx = ax[i]
        for j in range(nj):
            ky = ay[j]
            wxy = vx_w[i] * vy_w[j]
            for k in range(nk):
                kz = az[k]
                w = wxy * vz_w[k]
                inv_om = 1.0 / sqrt(kx * kx + ky * ky + kz * kz + m2)
                vx = kx * inv_om
                vy = ky * inv_om
                vz = kz * inv_om
                s0 += w
                wvx = w * vx
                wvy = w * vy
                wvz = w * vz
                s1x += wvx
                s1y += wvy
                s1z += wvz
                sxx += wvx * vx
                sxy += wvx * vy
                sxz += wvx * vz
                syy += wvy * vy
                syz += wvy * vz
                szz += wvz * vz

    s1 = np.array([s1x, s1y, s1z])
    s2 = np.array([[sxx, sxy, sxz], [sxy, syy, syz], [sxz, syz, szz]])
    return s0, s1, s2


def boosted_gradient_sums(nx, ny, nz, wx, wy, wz, double mass, double sigma_p,
                          double beta0):
    cdef double[::1] ax = np.ascontiguousarray(nx, dtype=np.float64)
    cdef double[::1] ay = np.ascontiguousarray(ny, dtype=np.float64)
    cdef double[::1] az = np.ascontiguousarray(nz, dtype=np.float64)
    cdef double[::1] awx = np.ascontiguousarray(wx, dtype=np.float64)
    cdef double[::1] awy = np.ascontiguousarray(wy, dtype=np.float64)
    cdef double[::1] awz = np.ascontiguousarray(wz, dtype=np.float64)
    cdef Py_ssize_t ni = ax.shape[0], nj = ay.shape[0], nk = az.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double m2 = mass * mass
    cdef double g0 = 1.0 / sqrt(1.0 - beta0 * beta0)
    cdef double norm = (2.0 * np.pi * sigma_p * sigma_p) ** (-0.75)
    cdef double inv4sp2 = 1.0 / (4.0 * sigma_p * sigma_p)
    cdef double px, py, pz, w, wxy, om, inv_om, inv_om3, jac2, jac, qz, q2
    cdef double psi_g, psi, pref, djx, djy, djz, dq2x, dq2y, dq2z, dx, dy, dz
    cdef double s0 = 0.0
    cdef double gxx = 0.0, gxy = 0.0, gxz = 0.0, gyy = 0.0, gyz = 0.0, gzz = 0.0

    for i in range(ni):
        px = ax[i]
        for j in range(nj):
            py = ay[j]
            wxy = awx[i] * awy[j]
            for k in range(nk):
                pz = az[k]
                w = wxy * awz[k]
                om = sqrt(px * px + py * py + pz * pz + m2)
                inv_om = 1.0 / om
                inv_om3 = inv_om * inv_om * inv_om
                jac2 = g0 * (1.0 - beta0 * pz * inv_om)
                jac = sqrt(jac2)
                qz = g0 * (pz - beta0 * om)
                q2 = px * px + py * py + qz * qz
                psi_g = norm * exp(-q2 * inv4sp2)
                psi = jac * psi_g

                pref = -g0 * beta0 / (2.0 * jac)
                djx = pref * (-pz * px * inv_om3)
                djy = pref * (-pz * py * inv_om3)
                djz = pref * (inv_om - pz * pz * inv_om3)

                dq2x = 2.0 * px + 2.0 * qz * g0 * (-beta0 * px * inv_om)
                dq2y = 2.0 * py + 2.0 * qz * g0 * (-beta0 * py * inv_om)
                dq2z = 2.0 * qz * g0 * (1.0 - beta0 * pz * inv_om)

                dx = djx * psi_g - psi * dq2x * inv4sp2
                dy = djy * psi_g - psi * dq2y * inv4sp2
                dz = djz * psi_g - psi * dq2z * inv4sp2

                s0 += w * psi * psi
                gxx += w * dx * dx
                gxy += w * dx * dy
                gxz += w * dx * dz
                gyy += w * dy * dy
                gyz += w * dy * dz
                gzz += w * dz * dz

    g = np.array([[gxx, gxy, gxz], [gxy, gyy, gyz], [gxz, gyz, gzz]])
    return s0, g


def oscillatory_profile_sums(rho, wrho, s, ws, double pmag, double mass,
                             double t, xpar, xperp):
    cdef double[::1] arho = np.ascontiguousarray(rho, dtype=np.float64)
    cdef double[::1] awrho = np.ascontiguousarray(wrho, dtype=np.float64)
    cdef double[::1] a_s = np.ascontiguousarray(s, dtype=np.float64)
    cdef double[::1] aws = np.ascontiguousarray(ws, dtype=np.float64)
    cdef double[::1] axp = np.ascontiguousarray(xpar, dtype=np.float64)
    cdef double[::1] axt = np.ascontiguousarray(xperp, dtype=np.float64)
    cdef Py_ssize_t na = arho.shape[0], nb = a_s.shape[0], nj = axp.shape[0]
    cdef Py_ssize_t a, b, jth
    cdef double m2 = mass * mass
    cdef double kpar, arg, wab, xp, xt, re, im

    om_arr = np.empty((na, nb), dtype=np.float64)
    cdef double[:, ::1] om = om_arr
    for a in range(na):
        kpar = pmag + arho[a]
        for b in range(nb):
            om[a, b] = sqrt(kpar * kpar + a_s[b] + m2)

    sqrt_s_arr = np.sqrt(np.asarray(a_s))
    cdef double[::1] sqrt_s = sqrt_s_arr
    bess_arr = np.empty(nb, dtype=np.float64)
    cdef double[::1] bess = bess_arr
    out = np.empty(nj, dtype=np.complex128)

    for jth in range(nj):
        xp = axp[jth]
        xt = fabs(axt[jth])
        for b in range(nb):
            bess[b] = aws[b] * c_j0(sqrt_s[b] * xt)
        re = 0.0
        im = 0.0
        for a in range(na):
            for b in range(nb):
                arg = arho[a] * xp - om[a, b] * t
                wab = awrho[a] * bess[b]
                re += wab * cos(arg)
                im += wab * sin(arg)
        out[jth] = complex(re, im)
    return out
