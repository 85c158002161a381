"""Command-line front end: plot-ready data files and validation reports.

All physical inputs are in units of the particle mass (natural units,
hbar = c = 1); times are given as beta*t/sigma_x, matching the scaled axes
of the spreading-law figure. Output is CSV by default (header row, LF line
endings, full round-trip float precision) or JSON (list of flat records
with the same field names).

Exit codes: 0 success, 1 usage error, 2 output I/O error, 3 numerical
failure, 4 invariant failure.
"""
from __future__ import annotations

import json
import sys

import click
import numpy as np

from .boost import BoostSpec, measure_contraction
from .checks import run_battery
from .oracle import density_profile, measured_curve
from .packet import GaussianPacket
from .quadrature import PhaseResolutionError, QuadratureSpec
from .spreading import spreading_curve

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_NUMERICAL = 3
EXIT_INVARIANT = 4


class CliFailure(Exception):
    """Command failure carrying one of the documented exit codes."""

    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _to_csv(records: list[dict]) -> str:
    header = list(records[0].keys())
    lines = [",".join(header)]
    for rec in records:
        lines.append(",".join(_fmt(rec[key]) for key in header))
    return "\n".join(lines) + "\n"


def _to_json(records: list[dict]) -> str:
    return json.dumps(records, indent=2) + "\n"


def _emit(records: list[dict], fmt: str, out: str | None):
    text = _to_csv(records) if fmt == "csv" else _to_json(records)
    if out is None or out == "-":
        click.echo(text, nl=False)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliFailure(EXIT_IO, f"cannot write {out}: {exc}") from exc


def _build_packet(mass, gamma, p, epsilon, sigma_p, default_gamma=None,
                  default_epsilon=None) -> GaussianPacket:
    if gamma is not None and p is not None:
        raise click.UsageError("--gamma and --p are mutually exclusive")
    if epsilon is not None and sigma_p is not None:
        raise click.UsageError("--epsilon and --sigma-p are mutually exclusive")
    if mass <= 0:
        raise click.UsageError("--mass must be positive")
    if gamma is None and p is None:
        if default_gamma is None:
            raise click.UsageError("supply exactly one of --gamma or --p")
        gamma = default_gamma
    if epsilon is None and sigma_p is None:
        if default_epsilon is None:
            raise click.UsageError("supply exactly one of --epsilon or --sigma-p")
        epsilon = default_epsilon

    if gamma is not None:
        if gamma <= 1.0:
            raise click.UsageError("--gamma must exceed 1 (scaled times need a moving packet)")
        pmag = mass * np.sqrt(gamma * gamma - 1.0)
    else:
        if p <= 0.0:
            raise click.UsageError("--p must be positive")
        pmag = p
    if epsilon is not None:
        if epsilon <= 0.0:
            raise click.UsageError("--epsilon must be positive")
        sigma_p = epsilon * pmag
    elif sigma_p <= 0.0:
        raise click.UsageError("--sigma-p must be positive")
    return GaussianPacket(mass=mass, mean_momentum=np.array([0.0, 0.0, pmag]),
                          sigma_p=sigma_p)


def _build_quad(nodes, halfwidth) -> QuadratureSpec:
    try:
        return QuadratureSpec(nodes_per_axis=nodes, halfwidth_sigmas=halfwidth)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _packet_options(fn):
    fn = click.option("--mass", type=float, default=1.0, show_default=True,
                      help="Particle mass (sets the unit scale).")(fn)
    fn = click.option("--gamma", type=float, default=None,
                      help="Lorentz factor of the mean momentum (exclusive with --p).")(fn)
    fn = click.option("--p", type=float, default=None,
                      help="Mean momentum magnitude (exclusive with --gamma).")(fn)
    fn = click.option("--epsilon", type=float, default=None,
                      help="Relative momentum width sigma_p/|p| (exclusive with --sigma-p).")(fn)
    fn = click.option("--sigma-p", type=float, default=None,
                      help="Momentum width (exclusive with --epsilon).")(fn)
    return fn


def _quad_options(fn):
    fn = click.option("--quad-nodes", type=int, default=64, show_default=True,
                      help="Quadrature nodes per axis.")(fn)
    fn = click.option("--quad-halfwidth", type=float, default=8.0, show_default=True,
                      help="Quadrature box half-width in units of sigma_p.")(fn)
    return fn


def _output_options(fn):
    fn = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                      default="csv", show_default=True, help="Output format.")(fn)
    fn = click.option("--out", type=str, default=None,
                      help="Output path (default: stdout).")(fn)
    return fn


@click.group()
def cli():
    """Spreading laws and Lorentz contraction of relativistic Gaussian wavepackets."""


def _spread_records(packet, t_max, samples, with_oracle, quad):
    times = np.linspace(0.0, t_max, samples)
    curve = spreading_curve(packet, times, scaled=True)
    records = [
        {
            "beta_t_over_sigma_x": float(bt),
            "sigma_par_over_sigma_x": float(sp),
            "sigma_perp_over_sigma_x": float(st),
        }
        for bt, sp, st in zip(curve.times, curve.sigma_par, curve.sigma_perp)
    ]
    if with_oracle:
        oc = measured_curve(packet, times, scaled=True, quad=quad)
        for rec, osp, ost in zip(records, oc.sigma_par, oc.sigma_perp):
            rec["oracle_sigma_par_over_sigma_x"] = float(osp)
            rec["oracle_sigma_perp_over_sigma_x"] = float(ost)
    return records


def _run_spread(mass, gamma, p, epsilon, sigma_p, t_max, samples, with_oracle,
                quad_nodes, quad_halfwidth, fmt, out, default_gamma=None,
                default_epsilon=None):
    packet = _build_packet(mass, gamma, p, epsilon, sigma_p,
                           default_gamma=default_gamma, default_epsilon=default_epsilon)
    if samples < 2:
        raise click.UsageError("--samples must be at least 2")
    if t_max <= 0:
        raise click.UsageError("--t-max must be positive")
    quad = _build_quad(quad_nodes, quad_halfwidth)
    _emit(_spread_records(packet, t_max, samples, with_oracle, quad), fmt, out)


@cli.command()
@_packet_options
@click.option("--t-max", type=float, default=100.0, show_default=True,
              help="Largest beta*t/sigma_x on the grid.")
@click.option("--samples", type=int, default=201, show_default=True,
              help="Number of time samples.")
@click.option("--with-oracle", is_flag=True, help="Append oracle-measured width columns.")
@_quad_options
@_output_options
def figure1(mass, gamma, p, epsilon, sigma_p, t_max, samples, with_oracle,
            quad_nodes, quad_halfwidth, fmt, out):
    """Scaled spreading-law curves (defaults epsilon=0.01, gamma=2)."""
    _run_spread(mass, gamma, p, epsilon, sigma_p, t_max, samples, with_oracle,
                quad_nodes, quad_halfwidth, fmt, out,
                default_gamma=2.0, default_epsilon=0.01)


@cli.command()
@_packet_options
@click.option("--t-max", type=float, default=100.0, show_default=True,
              help="Largest beta*t/sigma_x on the grid.")
@click.option("--samples", type=int, default=201, show_default=True,
              help="Number of time samples.")
@click.option("--with-oracle", is_flag=True, help="Append oracle-measured width columns.")
@_quad_options
@_output_options
def spread(mass, gamma, p, epsilon, sigma_p, t_max, samples, with_oracle,
           quad_nodes, quad_halfwidth, fmt, out):
    """Scaled spreading-law curves for free parameters."""
    _run_spread(mass, gamma, p, epsilon, sigma_p, t_max, samples, with_oracle,
                quad_nodes, quad_halfwidth, fmt, out)


@cli.command()
@_packet_options
@click.option("--t", "bt", type=float, default=0.0, show_default=True,
              help="Time as beta*t/sigma_x.")
@click.option("--axis", type=click.Choice(["parallel", "transverse"]),
              default="parallel", show_default=True,
              help="Axis through the moving center.")
@click.option("--offset-max", type=float, default=6.0, show_default=True,
              help="Largest sampled offset in units of sigma_x.")
@click.option("--samples", type=int, default=81, show_default=True,
              help="Number of offsets.")
@_quad_options
@_output_options
def density(mass, gamma, p, epsilon, sigma_p, bt, axis, offset_max, samples,
            quad_nodes, quad_halfwidth, fmt, out):
    """Oracle-sampled |psi|^2 along one axis through the packet center."""
    packet = _build_packet(mass, gamma, p, epsilon, sigma_p)
    if samples < 2:
        raise click.UsageError("--samples must be at least 2")
    if offset_max <= 0:
        raise click.UsageError("--offset-max must be positive")
    quad = _build_quad(quad_nodes, quad_halfwidth)
    beta = float(np.linalg.norm(packet.kinematics().beta))
    t = bt * packet.sigma_x / beta
    offsets = np.linspace(-offset_max, offset_max, samples)
    try:
        prof = density_profile(packet, t, axis, offsets, quad)
    except PhaseResolutionError as exc:
        raise CliFailure(EXIT_NUMERICAL, str(exc)) from exc
    records = [
        {"offset_sigma_x": float(o), "density": float(d)} for o, d in prof
    ]
    _emit(records, fmt, out)


@cli.command()
@click.option("--mass", type=float, default=1.0, show_default=True,
              help="Particle mass (sets the unit scale).")
@click.option("--sigma-p", type=float, required=True,
              help="Momentum width of the rest packet.")
@click.option("--beta0", type=float, required=True,
              help="Boost speed (boost is along +z).")
@_quad_options
@_output_options
def contract(mass, sigma_p, beta0, quad_nodes, quad_halfwidth, fmt, out):
    """Measured Lorentz contraction of the boosted rest packet."""
    if mass <= 0:
        raise click.UsageError("--mass must be positive")
    if sigma_p <= 0:
        raise click.UsageError("--sigma-p must be positive")
    if not 0.0 <= beta0 < 1.0:
        raise click.UsageError("--beta0 must lie in [0, 1)")
    quad = _build_quad(quad_nodes, quad_halfwidth)
    packet = GaussianPacket(mass=mass, mean_momentum=np.zeros(3), sigma_p=sigma_p)
    rep = measure_contraction(packet, BoostSpec(np.array([0.0, 0.0, beta0])), quad)
    record = {
        "sigma_par_ratio": rep.sigma_par_ratio,
        "sigma_perp_ratio": rep.sigma_perp_ratio,
        "predicted_ratio": rep.predicted_ratio,
        "narrowness": rep.narrowness,
        "norm_check": rep.norm_check,
        "converged": rep.converged,
        "est_error": rep.est_error,
        "narrowness_warning": bool(rep.narrowness > 0.1),
    }
    _emit([record], fmt, out)
    if not rep.converged:
        raise CliFailure(EXIT_NUMERICAL, "contraction quadrature did not converge")


@cli.command()
@click.option("--json", "as_json", is_flag=True, help="Shorthand for --format json.")
@_quad_options
@_output_options
def check(as_json, quad_nodes, quad_halfwidth, fmt, out):
    """Run the full invariant battery; exit 0 only if everything passes."""
    quad = _build_quad(quad_nodes, quad_halfwidth)
    items = run_battery(quad)
    records = [
        {
            "name": it.name,
            "passed": bool(it.passed),
            "measured": float(it.measured),
            "threshold": float(it.threshold),
            "detail": it.detail,
        }
        for it in items
    ]
    _emit(records, "json" if as_json else fmt, out)
    failed = [it.name for it in items if not it.passed]
    if failed:
        raise CliFailure(EXIT_INVARIANT, "failed invariants: " + " ".join(failed))


def main(argv=None) -> int:
    """Entry point with the documented exit-code mapping; never re-raises."""
    try:
        cli.main(args=argv, prog_name="relpack", standalone_mode=False)
        return EXIT_OK
    except CliFailure as exc:
        click.echo(f"relpack: {exc}", err=True)
        return exc.code
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.exceptions.Abort:
        click.echo("relpack: aborted", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except Exception as exc:  # a traceback must never reach the shell
        click.echo(f"relpack: internal error: {exc!r}", err=True)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
