"""Deterministic quadrature grids and refinement bookkeeping for the oracles.

Moment and density integrals run on fixed tensor-product grids sized in
units of the packet's momentum width. Convergence is never assumed: every
oracle evaluates once at the requested resolution and once with the node
count doubled, reporting the relative change as its error estimate. There
is no randomness anywhere; identical inputs give bit-identical results.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "QuadratureSpec",
    "PhaseResolutionError",
    "MOMENT_CONVERGENCE_TOL",
    "DENSITY_CONVERGENCE_TOL",
    "MAX_PHASE_PER_CELL",
    "trapezoid_axis",
    "legendre_axis",
    "radial_squared_axis",
    "relative_change",
]

# converged means the node-doubling estimate falls below these
MOMENT_CONVERGENCE_TOL = 1e-6
DENSITY_CONVERGENCE_TOL = 1e-4

# oscillatory integrands must not advance their phase faster than this per cell
MAX_PHASE_PER_CELL = np.pi / 4.0


@dataclass(frozen=True)
class QuadratureSpec:
    """Node count per axis, box half-width in units of sigma_p, and whether
    to run the node-doubling convergence check."""

    nodes_per_axis: int = 64
    halfwidth_sigmas: float = 8.0
    refinement: bool = True

    def __post_init__(self):
        if self.nodes_per_axis < 8:
            raise ValueError(f"nodes_per_axis must be >= 8, got {self.nodes_per_axis}")
        if self.halfwidth_sigmas < 5.0:
            raise ValueError(f"halfwidth_sigmas must be >= 5, got {self.halfwidth_sigmas}")

    def refined(self) -> "QuadratureSpec":
        return replace(self, nodes_per_axis=2 * self.nodes_per_axis)


class PhaseResolutionError(RuntimeError):
    """Raised when the integrand oscillates faster than the grid resolves."""

    def __init__(self, phase_per_cell: float, nodes_given: int, nodes_required: int):
        self.phase_per_cell = phase_per_cell
        self.nodes_given = nodes_given
        self.nodes_required = nodes_required
        super().__init__(
            f"estimated phase change per quadrature cell is {phase_per_cell:.3f} rad "
            f"(> pi/4) at {nodes_given} nodes per axis; "
            f"increase nodes_per_axis to at least {nodes_required}"
        )


def trapezoid_axis(center: float, halfwidth: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Equispaced nodes on [center - halfwidth, center + halfwidth] with
    trapezoid weights. Spectrally accurate for analytic integrands that decay
    below rounding at the box edge."""
    nodes = np.linspace(center - halfwidth, center + halfwidth, n)
    h = nodes[1] - nodes[0]
    weights = np.full(n, h)
    weights[0] = weights[-1] = 0.5 * h
    return nodes, weights


def legendre_axis(a: float, b: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


def radial_squared_axis(rmax: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes s = r^2 and weights realizing integral_0^rmax r f(r^2) dr = 1/2 integral_0^(rmax^2) f(s) ds.

    The substitution keeps integrands that are analytic in r^2 (Bessel kernels,
    dispersion factors) analytic on the whole interval, so Gauss-Legendre
    converges geometrically.
    """
    s, w = legendre_axis(0.0, rmax * rmax, n)
    return s, 0.5 * w


def relative_change(coarse, fine) -> float:
    """Max relative change between two refinement levels, scaled by the
    largest magnitude of the fine result (floored to avoid 0/0)."""
    coarse = np.asarray(coarse, dtype=float)
    fine = np.asarray(fine, dtype=float)
    scale = np.max(np.abs(fine))
    if scale == 0.0:
        scale = 1.0
    return float(np.max(np.abs(fine - coarse)) / scale)
