"""Command-line entry point: ``lambda-eit <subcommand> [options]``.

Exit codes: 0 success, 1 configuration/usage error, 2 numeric failure.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import dynamics, sweeps
from .algebra import MAX_ATOMS, AtomBasis, verify_algebra
from .config import KEYS, ConfigError, RunConfig, build_config, parse_config, parse_number
from .errors import InvalidParameter, NumericError
from .susceptibility import chi_parts, group_velocity_general, group_velocity_resonant, refractive_index
from .tables import CsvTable, emit_svg, render_svg


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="key = value parameter file")
    p.add_argument("--out", type=Path, help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    for key in KEYS:
        p.add_argument("--" + key.replace("_", "-"), dest=key, metavar="X", help=f"override {key}")


def _grid_args(p, grid: sweeps.GridSpec) -> None:
    p.add_argument("--start", type=float, default=grid.start)
    p.add_argument("--stop", type=float, default=grid.stop)
    p.add_argument("--points", type=int, default=grid.points)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lambda-eit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("chi", help="susceptibility and refractive index at one point")
    _common(p)

    p = sub.add_parser("vg", help="group velocity at one point")
    _common(p)
    p.add_argument("--derivative", choices=("analytic", "finite-difference"), default="analytic")
    p.add_argument("--step", type=float, default=1e-4, help="finite-difference step")

    p = sub.add_parser("sweep-chi", help="chi versus two-photon detuning")
    _common(p)
    _grid_args(p, sweeps.FIG2_GRID)

    p = sub.add_parser("sweep-vg-rabi", help="resonant group velocity versus Rabi frequency")
    _common(p)
    _grid_args(p, sweeps.FIG3A_GRID)

    p = sub.add_parser("sweep-vg-detuning", help="resonant group velocity versus common detuning")
    _common(p)
    _grid_args(p, sweeps.FIG3B_GRID)
    p.add_argument("--case", action="append", metavar="RABI:G_ROOT_N", help="repeatable; default: figure cases")

    p = sub.add_parser("ode", help="integrate the mean-field equations at constant drive")
    _common(p)
    p.add_argument("--t-end", type=float, help="default: 80 relaxation times of the slow mode")
    p.add_argument("--dt", type=float, help="default: largest stable step")
    p.add_argument("--samples", type=int, default=1000)

    p = sub.add_parser("storage", help="adiabatic control-field ramp on two-photon resonance")
    _common(p)
    p.add_argument("--rabi-start", type=float, default=50.0)
    p.add_argument("--rabi-stop", type=float, default=0.04)
    p.add_argument("--duration", type=float, default=500.0)
    p.add_argument("--samples", type=int, default=101)

    p = sub.add_parser("algebra", help="commutator checks for N = 1..max-atoms")
    _common(p)
    p.add_argument("--max-atoms", type=int, default=6)

    p = sub.add_parser("figures", help="write every figure table as CSV and SVG")
    p.add_argument("--config", type=Path)
    p.add_argument("--out", type=Path, default=Path("figures"), help="output directory")
    return parser


def _load(args) -> RunConfig:
    if getattr(args, "config", None) is not None:
        params, point, amp = parse_config(args.config)
        values = RunConfig(params, point, amp).values()
    else:
        values = {}
    for key in KEYS:
        raw = getattr(args, key, None)
        if raw is not None:
            values[key] = parse_number(raw, f"--{key.replace('_', '-')}: ")
    return build_config(values)


def _emit(args, table: CsvTable, x_col: str, y_cols: Sequence[str]) -> None:
    text = render_svg(table, x_col, y_cols) if args.format == "svg" else table.to_csv()
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text, encoding="utf-8", newline="")


def cmd_chi(args, cfg: RunConfig) -> None:
    if args.format == "svg":
        raise UsageError("chi produces a single row; SVG output needs a sweep")
    pt, params = cfg.point, cfg.params
    s = chi_parts(pt, params)
    n = refractive_index(s.value)
    header = ("delta_p", "delta_c", "delta", "chi1", "chi2", "n1", "n2", "theta", "xi", "f_const")
    table = CsvTable(header, [(pt.delta_p, pt.delta_c, pt.delta, s.chi1, s.chi2, n.n1, n.n2, s.theta, s.xi, s.f_const)])
    _emit(args, table, "delta", ("chi1",))


def cmd_vg(args, cfg: RunConfig) -> None:
    if args.format == "svg":
        raise UsageError("vg produces a single row; SVG output needs a sweep")
    pt, params = cfg.point, cfg.params
    gen = group_velocity_general(pt, params, args.derivative, args.step)
    res = group_velocity_resonant(pt.delta_c, params, args.derivative, args.step)
    header = ("delta_p", "delta_c", "rabi", "g_root_n", "vg_general", "vg_resonant")
    table = CsvTable(header, [(pt.delta_p, pt.delta_c, params.rabi, params.g_root_n, gen.vg_over_c, res.vg_over_c)])
    _emit(args, table, "delta_p", ("vg_general",))


def _grid(args) -> sweeps.GridSpec:
    try:
        return sweeps.GridSpec(args.start, args.stop, args.points)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_sweep_chi(args, cfg):
    rows = sweeps.sweep_chi(_grid(args), cfg.point.delta_c, cfg.params)
    _emit(args, sweeps.rows_to_table(rows, "delta"), "delta", ("chi1", "chi2"))


def cmd_sweep_vg_rabi(args, cfg):
    grid = _grid(args)
    if grid.start <= 0:
        raise UsageError("--start must be positive for a Rabi-frequency sweep")
    rows = sweeps.sweep_vg_vs_rabi(grid, cfg.point.delta_c, cfg.params)
    _emit(args, sweeps.rows_to_table(rows, "rabi"), "rabi", ("vg_over_c",))


def _parse_case(text: str) -> tuple[float, float]:
    try:
        rabi, g = text.split(":")
        return parse_number(rabi, "--case: "), parse_number(g, "--case: ")
    except ValueError:
        raise UsageError(f"--case expects RABI:G_ROOT_N, got {text!r}") from None


def cmd_sweep_vg_detuning(args, cfg):
    cases = [_parse_case(c) for c in args.case] if args.case else list(sweeps.FIG3B_CASES)
    rows = sweeps.sweep_vg_vs_detuning(_grid(args), cases, cfg.params)
    if args.format == "svg":
        # one polyline per case
        xs = list(_grid(args).values())
        cols = {}
        for rabi, g in cases:
            cols[f"vg_rabi{rabi:g}_g{g:g}"] = [r.vg_over_c for r in sweeps.rows_for_case(rows, rabi, g)]
        table = CsvTable(("delta_c",) + tuple(cols), [tuple([x] + [c[i] for c in cols.values()]) for i, x in enumerate(xs)])
        _emit(args, table, "delta_c", tuple(cols))
    else:
        _emit(args, sweeps.rows_to_table(rows, "delta_c"), "delta_c", ("vg_over_c",))


def cmd_ode(args, cfg):
    params, pt = cfg.params, cfg.point
    drive = dynamics.DriveSpec.constant(cfg.probe_amp, params.rabi)
    slow = min(1.0, params.gamma_c + params.rabi**2 / params.gamma_a)
    t_end = args.t_end if args.t_end is not None else 80.0 / slow
    dt = args.dt if args.dt is not None else dynamics.max_step(pt, params, drive)
    n_steps = math.ceil(t_end / dt)
    stride = max(1, n_steps // max(1, args.samples))
    traj = dynamics.integrate(dynamics.MeanFieldState(0j, 0j), pt, params, drive, t_end, dt, stride)
    ss = dynamics.steady_state_solve(pt, params, cfg.probe_amp)
    header = ("t", "re_a", "im_a", "re_c_tilde", "im_c_tilde", "abs_a", "abs_c_tilde")
    table = CsvTable(
        header,
        [(s.time, s.exc_a.real, s.exc_a.imag, s.exc_c_tilde.real, s.exc_c_tilde.imag, abs(s.exc_a), abs(s.exc_c_tilde)) for s in traj],
    )
    last = traj[-1]
    gap = math.hypot(abs(last.exc_a - ss.exc_a_ss), abs(last.exc_c_tilde - ss.exc_c_tilde_ss))
    scale = math.hypot(abs(ss.exc_a_ss), abs(ss.exc_c_tilde_ss))
    print(f"# terminal distance to closed-form steady state: {gap:.3e} (relative {gap / scale if scale else gap:.3e})", file=sys.stderr)
    _emit(args, table, "t", ("abs_a", "abs_c_tilde"))


def cmd_storage(args, cfg):
    ramp = dynamics.DriveSpec.linear_ramp(cfg.probe_amp, args.rabi_start, args.rabi_stop, args.duration)
    samples = dynamics.storage_ramp(cfg.params, cfg.point.delta_c, ramp, args.samples)
    table = CsvTable(("t", "rabi", "vg_over_c", "abs_a", "abs_c_tilde"), [tuple(s) for s in samples])
    print(f"# stored in C mode (terminal |A| <= 1e-3 |C~|): {dynamics.is_stored(samples)}", file=sys.stderr)
    _emit(args, table, "t", ("vg_over_c",))


def cmd_algebra(args, cfg):
    if args.format == "svg":
        raise UsageError("algebra output is tabular only")
    if not 1 <= args.max_atoms <= MAX_ATOMS:
        raise UsageError(f"--max-atoms must be in 1..{MAX_ATOMS}")
    table = CsvTable(("n_atoms", "identity", "max_abs_deviation"))
    for n in range(1, args.max_atoms + 1):
        for check in verify_algebra(AtomBasis(n)):
            table.append((n, check.identity, check.max_abs_deviation))
    _emit(args, table, "n_atoms", ())


def cmd_figures(args):
    if args.config is not None:
        params, _, _ = parse_config(args.config)
    else:
        params = build_config({}).params
    args.out.mkdir(parents=True, exist_ok=True)
    for name, (table, x_col, y_cols) in sweeps.figure_tables(params).items():
        table.write(args.out / f"{name}.csv")
        emit_svg(table, x_col, y_cols, args.out / f"{name}.svg", title=name)


COMMANDS = {
    "chi": cmd_chi,
    "vg": cmd_vg,
    "sweep-chi": cmd_sweep_chi,
    "sweep-vg-rabi": cmd_sweep_vg_rabi,
    "sweep-vg-detuning": cmd_sweep_vg_detuning,
    "ode": cmd_ode,
    "storage": cmd_storage,
    "algebra": cmd_algebra,
}


def run_subcommand(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "figures":
            cmd_figures(args)
        else:
            COMMANDS[args.command](args, _load(args))
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2
    except InvalidParameter as exc:
        # invalid points reached inside a computation (e.g. omega <= 0 on a sweep)
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run_subcommand())


if __name__ == "__main__":
    main()
