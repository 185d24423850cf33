"""Command-line entry point: every subsystem behind one tool with CSV output.

Exit codes: 0 success, 2 validation error, 3 convergence failure.  Angles
are degrees on the command line; output files are byte-identical across
runs with identical configuration.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import csvio, stats
from .config import RunConfig, load_config_file
from .drive import CurrentProfile, displacement_amplitude, evolve_mode
from .field import ModeRegistry, log_smatrix_scale
from .spectrum import (
    ConvergenceError,
    PotentialSpec,
    derive_params,
    energy_analytic,
    solve_schrodinger,
    table1_report,
)
from .states import QuadratureError

OUTPUT_DIR_ENV = "CQHO_OUTPUT_DIR"


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats, got {text!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cqho",
        description="Confined-oscillator toolkit: spectra, coherent-state statistics, "
        "field scaling factors and current-driven state generation.",
    )
    parser.add_argument("--config", type=Path, help="flat key=value config file")
    parser.add_argument("--output-dir", type=Path, help=f"output directory (or ${OUTPUT_DIR_ENV})")
    parser.add_argument("--threads", type=int, help="cap on worker threads")
    parser.add_argument("--m", type=float, help="mass (default 1)")
    parser.add_argument("--omega", type=float, help="oscillator frequency (default 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="energy levels of the confined oscillator")
    p.add_argument("--a", type=float, required=True, help="well half-width")
    p.add_argument("--levels", type=int, default=5)
    p.add_argument("--kind", choices=("model", "hardwall"), default="model")
    p.add_argument("--grid-points", type=int, default=2000)
    p.add_argument("--fd", action="store_true",
                   help="force the finite-difference solver for the model potential")

    p = sub.add_parser("table1", help="reference-table comparison sweep")
    p.add_argument("--grid-points", type=int, default=2000)

    p = sub.add_parser("fig", help="observable sweeps behind the bundled reports")
    p.add_argument("which", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--beta-sq", type=_float_list,
                   help="amplitude(s) |beta|^2; a list selects series for sweeps 1 and 4")
    p.add_argument("--a", type=_float_list, help="half-width series for sweep 2")
    p.add_argument("--phi", type=_float_list,
                   help="phase(s) in degrees; a list selects series for sweep 3")

    p = sub.add_parser("scales", help="propagator and scattering scale factors")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--n-max", type=int, default=10)

    p = sub.add_parser("drive", help="drive one or more modes with a classical current")
    p.add_argument("--a", type=float, default=None, help="well half-width (default from config)")
    p.add_argument("--profile", choices=("point-charge", "rectangular", "resonant", "tabulated"),
                   default="resonant")
    p.add_argument("--charge", type=float, default=1.0)
    p.add_argument("--velocity", type=float, default=1.0)
    p.add_argument("--j0", type=float, default=1.0)
    p.add_argument("--duration", type=float, default=2.0)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--table", type=Path, help="CSV with columns t,re,im for a tabulated profile")
    p.add_argument("--modes", type=int, default=1)
    p.add_argument("--fock-dim", type=int, default=32)
    p.add_argument("--t-final", type=float, default=None)
    p.add_argument("--samples", type=int, default=9)
    p.add_argument("--volume", type=float, default=None)
    return parser


def _resolve_config(args) -> RunConfig:
    cfg = load_config_file(args.config) if args.config else RunConfig()
    out_dir = args.output_dir
    if out_dir is None and os.environ.get(OUTPUT_DIR_ENV):
        out_dir = Path(os.environ[OUTPUT_DIR_ENV])
    return cfg.with_overrides(
        output_dir=out_dir, threads=args.threads, m=args.m, omega=args.omega
    )


def _cmd_spectrum(args, cfg: RunConfig) -> Path:
    k_spring = cfg.m * cfg.omega**2
    rows = []
    if args.kind == "hardwall" or args.fd:
        kind = "hard_wall_ho" if args.kind == "hardwall" else "model_tan"
        result = solve_schrodinger(
            PotentialSpec(kind, args.a, k_spring, cfg.m), args.levels, args.grid_points
        )
        for n in range(args.levels):
            rows.append((n, float(result.levels[n]), "finite_difference",
                         float(result.richardson_error_estimate[n])))
    else:
        params = derive_params(args.a, cfg.m, cfg.omega)
        for n in range(args.levels):
            rows.append((n, float(energy_analytic(params, n)), "analytic", 0.0))
    return csvio.write_csv(
        cfg.output_dir / "spectrum.csv",
        ("level", "energy", "method", "error_estimate"),
        rows,
        cfg.header_comment(),
    )


def _cmd_table1(args, cfg: RunConfig) -> Path:
    rows = table1_report(args.grid_points, cfg.m, cfg.omega, max_workers=cfg.threads)
    formatted = [
        (r.state, format(r.a, ".8f"), format(r.analytic, ".8f"),
         format(r.fd_model, ".8f"), format(r.fd_hardwall, ".8f"),
         format(r.ref_model, ".8f"), format(r.ref_numeric, ".8f"),
         format(r.dev_model, ".8f"), format(r.dev_numeric, ".8f"))
        for r in rows
    ]
    return csvio.write_csv(
        cfg.output_dir / "table1.csv",
        ("state", "a", "analytic", "fd_model", "fd_hardwall",
         "ref_model", "ref_numeric", "dev_model", "dev_numeric"),
        formatted,
        cfg.header_comment(),
    )


def _cmd_fig(args, cfg: RunConfig) -> Path:
    which = args.which
    series_values = None
    beta_sq = None
    phi_deg = 0.0
    if which in (1, 4):
        series_values = tuple(args.beta_sq) if args.beta_sq else None
        if args.phi:
            phi_deg = args.phi[0]
    elif which == 2:
        series_values = tuple(args.a) if args.a else None
        if args.beta_sq:
            beta_sq = args.beta_sq[0]
    else:
        series_values = tuple(args.phi) if args.phi else None
        if args.beta_sq:
            beta_sq = args.beta_sq[0]

    series_name, bundle = stats.figure_series(
        which, points=args.points, series_values=series_values,
        beta_sq=beta_sq, phi_deg=phi_deg, m=cfg.m, omega=cfg.omega,
    )
    spec_cfg = stats.FIGURE_DEFAULTS[which]
    rows = [
        (value, pt.x, pt.value, pt.fock_dim, pt.residual)
        for value, points in bundle
        for pt in points
    ]
    return csvio.write_csv(
        cfg.output_dir / f"fig{which}.csv",
        (series_name, spec_cfg["variable"], spec_cfg["observable"], "fock_dim", "residual"),
        rows,
        cfg.header_comment(),
    )


def _cmd_scales(args, cfg: RunConfig) -> Path:
    params = derive_params(args.a, cfg.m, cfg.omega)
    f = params.deformation()
    rows = []
    for n in range(args.n_max + 1):
        log_F = log_smatrix_scale(f, n)
        F_n = float(np.exp(log_F)) if log_F <= 700.0 else float("inf")
        rows.append((args.a, params.gamma, params.alpha, n, F_n, log_F))
    return csvio.write_csv(
        cfg.output_dir / "scales.csv",
        ("a", "gamma", "alpha", "n", "F_n", "log_F_n"),
        rows,
        cfg.header_comment(),
    )


def _load_table_profile(path: Path) -> CurrentProfile:
    data = np.genfromtxt(path, delimiter=",", comments="#", names=True)
    return CurrentProfile.tabulated(data["t"], data["re"] + 1j * data["im"])


def _cmd_drive(args, cfg: RunConfig) -> Path:
    a = args.a if args.a is not None else cfg.a
    registry = ModeRegistry.build(a, args.modes, fock_dim=args.fock_dim, volume=args.volume)
    if args.profile == "point-charge":
        profile = CurrentProfile.point_charge(args.charge, args.velocity, a)
    elif args.profile == "rectangular":
        profile = CurrentProfile.rectangular(args.j0, args.duration)
    elif args.profile == "resonant":
        profile = CurrentProfile.resonant(args.duration, args.scale)
    else:
        if not args.table:
            raise ValueError("tabulated profile requires --table")
        profile = _load_table_profile(args.table)

    t_final = args.t_final if args.t_final is not None else profile.t_end
    sample_times = np.linspace(profile.t_start, t_final, args.samples + 1)[1:]
    f = derive_params(a, cfg.m, cfg.omega).deformation()
    rows = []
    for mode in registry.modes:
        result = evolve_mode(
            mode, profile, t_final, registry.volume, f, sample_times=sample_times
        )
        for s in result.samples:
            rows.append((mode.k_index, s.t, s.beta.real, s.beta.imag, s.fidelity, s.norm_drift))
    return csvio.write_csv(
        cfg.output_dir / "drive.csv",
        ("mode_k", "t", "re_beta", "im_beta", "fidelity", "norm_drift"),
        rows,
        cfg.header_comment(),
    )


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "table1": _cmd_table1,
    "fig": _cmd_fig,
    "scales": _cmd_scales,
    "drive": _cmd_drive,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve_config(args)
        path = _COMMANDS[args.command](args, cfg)
    except (ConvergenceError, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
