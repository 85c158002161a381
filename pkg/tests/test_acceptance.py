"""Acceptance suite: every headline requirement at its stated tolerance.

Each test prints one PASS/FAIL line (visible with ``pytest -s`` and in any
failure output). The law-concordance grid test pins the 0.5% tolerance at
every grid point as specified, including the four epsilon = 0.05 points
beyond the validity horizon beta*T/sigma_x = 2/epsilon where the exact
parallel width genuinely departs from the closed-form law by up to ~3%;
those assertions fail by physics, not by implementation (the measured
departures shrink as epsilon^2 and the two independent oracles agree with
each other everywhere, see the cross-oracle test).
"""
import math
import time
from types import SimpleNamespace

import numpy as np
import pytest

from relpack import (
    BoostSpec,
    GaussianPacket,
    QuadratureSpec,
    boosted_norm,
    density_profile,
    gaussian_integral,
    measure_contraction,
    position_moments,
    profile_variance,
    sigma_parallel,
    sigma_perp,
    velocity_moments,
)
from relpack.checks import chirped_gaussian_quadrature
from relpack.cli import main
from relpack.oracle import profile_nodes_required
from tests.conftest import scaled_time

EPS_GRID = (0.01, 0.05)
GAMMA_GRID = (1.25, 2.0, 5.0)
BT_GRID = (0.0, 10.0, 50.0, 100.0)


def announce(num, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {num} {name}: {status}{suffix}")


@pytest.fixture(scope="module")
def moment_grid():
    """Moment-oracle reports over the full (eps, gamma, bt) grid; one
    velocity quadrature per packet serves all four times."""
    t0 = time.perf_counter()
    data = {}
    for eps in EPS_GRID:
        for gamma in GAMMA_GRID:
            pkt = GaussianPacket.from_gamma_epsilon(1.0, gamma, eps)
            vm = velocity_moments(pkt)
            for bt in BT_GRID:
                t = scaled_time(pkt, bt)
                rep = position_moments(pkt, t)
                data[(eps, gamma, bt)] = SimpleNamespace(packet=pkt, t=t, report=rep, vm=vm)
    return SimpleNamespace(data=data, elapsed=time.perf_counter() - t0)


def law_widths(pkt, t):
    return sigma_parallel(pkt, t, warn=False), sigma_perp(pkt, t, warn=False)


def test_criterion_1_figure_curve(tmp_path):
    out = tmp_path / "figure1.csv"
    t0 = time.perf_counter()
    code = main(["figure1", "--out", str(out)])
    elapsed = time.perf_counter() - t0
    rows = out.read_text().strip().split("\n")[1:]
    last = [float(v) for v in rows[-1].split(",")]
    dev_par = abs(last[1] - math.sqrt(1.0625))
    dev_perp = abs(last[2] - math.sqrt(2.0))
    ok = code == 0 and last[0] == 100.0 and dev_par <= 1e-6 and dev_perp <= 1e-6 and elapsed < 1.0
    announce(1, "figure curve endpoints", ok,
             f"par dev {dev_par:.1e}, perp dev {dev_perp:.1e}, {elapsed:.2f}s")
    assert code == 0
    assert last[0] == 100.0
    assert dev_par <= 1e-6
    assert dev_perp <= 1e-6
    assert elapsed < 1.0


def test_criterion_2_law_concordance(moment_grid):
    t0 = time.perf_counter()
    violations = []
    worst = 0.0
    for (eps, gamma, bt), point in moment_grid.data.items():
        law_par, law_perp = law_widths(point.packet, point.t)
        dev_par = abs(point.report.sigma_par / law_par - 1.0)
        dev_perp = abs(point.report.sigma_perp / law_perp - 1.0)
        worst = max(worst, dev_par, dev_perp)
        if dev_par > 5e-3:
            violations.append((eps, gamma, bt, "par", dev_par))
        if dev_perp > 5e-3:
            violations.append((eps, gamma, bt, "perp", dev_perp))

    # epsilon-halving: the transverse width at the far edge is dominated by
    # its spreading term, so its law residual carries the clean eps^2 scaling
    devs = []
    for eps in (0.05, 0.025):
        pkt = GaussianPacket.from_gamma_epsilon(1.0, 2.0, eps)
        t = scaled_time(pkt, 100.0)
        rep = position_moments(pkt, t)
        devs.append(abs(rep.sigma_perp / sigma_perp(pkt, t, warn=False) - 1.0))
    ratio = devs[0] / devs[1]
    elapsed = moment_grid.elapsed + time.perf_counter() - t0

    ok = not violations and 3.2 <= ratio <= 4.8 and elapsed < 30.0
    detail = (f"worst dev {100 * worst:.2f}%, halving ratio {ratio:.2f}, {elapsed:.1f}s"
              + (f"; {len(violations)} grid points beyond 0.5%" if violations else ""))
    announce(2, "law concordance over grid", ok, detail)
    assert 3.2 <= ratio <= 4.8
    assert elapsed < 30.0
    if violations:
        lines = [f"  eps={e} gamma={g} bt={b} {which}: {100 * d:.2f}%"
                 for e, g, b, which, d in violations]
        pytest.fail(
            "closed-form law deviates beyond 0.5% at grid points past the "
            "validity horizon beta*T/sigma_x = 2/eps (physics of the "
            "second-order truncation, not quadrature error):\n" + "\n".join(lines)
        )


def test_criterion_3_anisotropy_identity(moment_grid):
    # analytic laws: exact identity, checked where extracting the excesses
    # by subtraction is conditioned well below 1e-12
    worst_analytic = 0.0
    for eps in EPS_GRID:
        for gamma in GAMMA_GRID:
            pkt = GaussianPacket.from_gamma_epsilon(1.0, gamma, eps)
            sx2 = pkt.sigma_x**2
            for bt in (1.0 / eps, 100.0):
                t = scaled_time(pkt, bt)
                lhs = sigma_perp(pkt, t, warn=False) ** 2 - sx2
                rhs = gamma**4 * (sigma_parallel(pkt, t, warn=False) ** 2 - sx2)
                worst_analytic = max(worst_analytic, abs(lhs - rhs) / lhs)

    # oracle: the identity inherits the gamma^4-amplified transverse-mixing
    # correction, so quadrature tolerance holds on the moderate-gamma points
    worst_oracle = 0.0
    for gamma in (1.25, 2.0):
        point = moment_grid.data[(0.01, gamma, 50.0)]
        sx2 = point.packet.sigma_x**2
        lhs = point.report.sigma_perp**2 - sx2
        rhs = gamma**4 * (point.report.sigma_par**2 - sx2)
        worst_oracle = max(worst_oracle, abs(lhs / rhs - 1.0))

    ok = worst_analytic <= 1e-12 and worst_oracle <= 5e-3
    announce(3, "anisotropy identity", ok,
             f"analytic {worst_analytic:.1e}, oracle {100 * worst_oracle:.3f}%")
    assert worst_analytic <= 1e-12
    assert worst_oracle <= 5e-3


def test_criterion_4_lorentz_contraction():
    t0 = time.perf_counter()
    spec = BoostSpec(np.array([0.0, 0.0, math.sqrt(3.0) / 2.0]))
    reports = {}
    for sp in (0.005, 0.0025):
        reports[sp] = measure_contraction(GaussianPacket(1.0, np.zeros(3), sp), spec)
    rep = reports[0.005]
    dev_par = abs(rep.sigma_par_ratio - 0.5)
    dev_perp = abs(rep.sigma_perp_ratio - 1.0)
    scaling = (
        abs(reports[0.005].sigma_par_ratio / 0.5 - 1.0)
        / abs(reports[0.0025].sigma_par_ratio / 0.5 - 1.0)
    )
    elapsed = time.perf_counter() - t0
    ok = dev_par <= 1e-3 and dev_perp <= 1e-3 and 2.8 <= scaling <= 5.2 and elapsed < 30.0
    announce(4, "lorentz contraction", ok,
             f"par dev {dev_par:.1e}, perp dev {dev_perp:.1e}, "
             f"scaling {scaling:.2f}, {elapsed:.1f}s")
    assert dev_par <= 1e-3
    assert dev_perp <= 1e-3
    assert 2.8 <= scaling <= 5.2
    assert elapsed < 30.0


def test_criterion_5_boost_unitarity():
    rest = GaussianPacket(1.0, np.zeros(3), 0.005)
    worst = 0.0
    for gamma0 in (1.25, 2.0, 5.0):
        b0 = math.sqrt(1.0 - 1.0 / gamma0**2)
        assert rest.sigma_p / (rest.mass * b0) <= 0.01
        norm, _, _ = boosted_norm(rest, BoostSpec(np.array([0.0, 0.0, b0])))
        worst = max(worst, abs(1.0 - norm))
    ok = worst <= 1e-8
    announce(5, "boost unitarity", ok, f"worst |1-norm| {worst:.1e}")
    assert worst <= 1e-8


def test_criterion_6_gaussian_integral_identity():
    rng = np.random.default_rng(987654321)
    worst = 0.0
    for _ in range(20):
        sigma = rng.uniform(0.5, 2.0)
        xi = rng.uniform(-3.0, 3.0)
        tau = rng.uniform(-2.0, 2.0)
        closed = gaussian_integral(sigma, xi, tau)
        brute = chirped_gaussian_quadrature(sigma, xi, tau)
        worst = max(worst, abs(closed.real - brute.real), abs(closed.imag - brute.imag))
    ok = worst <= 1e-8
    announce(6, "gaussian integral identity", ok, f"worst part dev {worst:.1e}")
    assert worst <= 1e-8


def test_criterion_7_oracle_vs_oracle(moment_grid):
    violations = []
    worst_rel = 0.0
    worst_t0 = 0.0
    for (eps, gamma, bt), point in moment_grid.data.items():
        pkt = point.packet
        rep = point.report
        for axis, sigma in (("parallel", rep.sigma_par), ("transverse", rep.sigma_perp)):
            span = 5.0 * sigma / pkt.sigma_x
            offsets = np.linspace(-span, span, 41)
            nodes = profile_nodes_required(pkt, point.t, offsets, axis=axis)
            prof = density_profile(pkt, point.t, axis, offsets,
                                   QuadratureSpec(nodes_per_axis=nodes))
            var = profile_variance(prof) * pkt.sigma_x**2
            tol = max(5e-3, prof.est_error, rep.est_error)
            dev = abs(var / sigma**2 - 1.0)
            worst_rel = max(worst_rel, dev)
            if dev > tol:
                violations.append((eps, gamma, bt, axis, dev))
            if bt == 0.0:
                worst_t0 = max(worst_t0, abs(var / pkt.sigma_x**2 - 1.0),
                               abs(sigma**2 / pkt.sigma_x**2 - 1.0))
    ok = not violations and worst_t0 <= 2e-3
    npts = len({v[:3] for v in violations})
    detail = (f"worst variance dev {100 * worst_rel:.3f}%, t=0 dev {100 * worst_t0:.3f}%"
              + (f"; {len(violations)} width checks at {npts} grid points beyond 0.5%"
                 if violations else ""))
    announce(7, "oracle vs oracle", ok, detail)
    assert worst_t0 <= 2e-3
    if violations:
        lines = [f"  eps={e} gamma={g} bt={b} {which}: {100 * d:.2f}%"
                 for e, g, b, which, d in violations]
        pytest.fail(
            "the on-axis density slice departs from the full covariance at "
            "the same beyond-horizon points where the closed-form law fails: "
            "past beta*T/sigma_x = 2/eps the exact density no longer "
            "factorizes, so a slice through the center and the marginal "
            "measure different widths (the marginal itself matches the "
            "moment oracle to ~1e-9, see the supplement test):\n"
            + "\n".join(lines)
        )


def test_supplement_marginal_concordance():
    # apples-to-apples cross-check of the two oracles at the grid point where
    # the slice disagrees the most: the x_par marginal of the reconstructed
    # density must reproduce the moment-oracle variance to quadrature accuracy
    from scipy.special import j0

    from relpack.oracle import _profile_grids
    from relpack.quadrature import radial_squared_axis, trapezoid_axis

    pkt = GaussianPacket.from_gamma_epsilon(1.0, 5.0, 0.05)
    t = scaled_time(pkt, 100.0)
    rep = position_moments(pkt, t)
    beta = float(np.linalg.norm(pkt.kinematics().beta))
    center = beta * t
    x_nodes, x_w = trapezoid_axis(center, 9.0 * rep.sigma_par, 161)
    sx_nodes, sx_w = radial_squared_axis(9.0 * rep.sigma_perp, 128)
    n_inner = max(
        profile_nodes_required(pkt, t, [9.0 * rep.sigma_par / pkt.sigma_x], axis="parallel"),
        profile_nodes_required(pkt, t, [9.0 * rep.sigma_perp / pkt.sigma_x], axis="transverse"),
    )
    rho, wrho, s, ws = _profile_grids(pkt, 2 * n_inner, 8.0)
    om = np.sqrt((pkt.momentum_norm + rho)[:, None] ** 2 + s[None, :] + pkt.mass**2)
    psi = (
        (wrho[:, None] * np.exp(1j * np.outer(rho, x_nodes))).T
        @ np.exp(-1j * om * t)
        @ (ws[:, None] * j0(np.outer(np.sqrt(s), np.sqrt(sx_nodes))))
    )
    dens = np.abs(psi) ** 2
    marginal = dens @ (2.0 * np.pi * sx_w)
    norm = x_w @ marginal
    mean = x_w @ (marginal * x_nodes) / norm
    var_par = x_w @ (marginal * (x_nodes - mean) ** 2) / norm
    # and the transverse marginal second moment, halved per axis
    marginal_r = x_w @ dens
    var_perp = (marginal_r * sx_nodes / 2.0) @ sx_w / (marginal_r @ sx_w)
    dev_par = abs(var_par / rep.sigma_par**2 - 1.0)
    dev_perp = abs(var_perp / rep.sigma_perp**2 - 1.0)
    announce("7b", "marginal concordance supplement", max(dev_par, dev_perp) <= 1e-3,
             f"par dev {dev_par:.1e}, perp dev {dev_perp:.1e}")
    assert dev_par <= 1e-3
    assert dev_perp <= 1e-3


def test_criterion_8_check_command(capsys):
    code_default = main(["check", "--out", "/dev/null"])
    code_coarse = main(["check", "--quad-nodes", "8", "--out", "/dev/null"])
    capsys.readouterr()
    ok = code_default == 0 and code_coarse == 4
    announce(8, "self-check exit codes", ok,
             f"default exit {code_default}, coarse exit {code_coarse}")
    assert code_default == 0
    assert code_coarse == 4
