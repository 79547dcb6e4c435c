"""Command-line front end.

Subcommands:

    steady    one steady-state solve, result as JSON on stdout
    sweep     parameter sweep to CSV
    dressed   manifold eigenvalues (numeric vs closed form) to CSV
    figure    bundled presets, written as fig<id>.csv
    validate  run the oracle suite, one PASS/FAIL line per check

All physical quantities are in units of the cavity decay rate kappa.
Option precedence: command-line flags override config-file keys override
defaults.  The config file is plain ``key=value`` lines with ``#``
comments; keys are delta, g, phiZ, J, omegaP, omegaD, gammaGE, gammaSE,
gammaGS, fockCutoff.  Exit codes: 0 success, 1 validation failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import dressed as dr
from . import observables as obs
from . import solver, sweep
from .model import PARAM_KEYS, SystemParams, build_hamiltonian, collapse_operators
from .observables import PointResult
from .sweep import (
    METRIC_COLUMNS,
    DressedScan,
    SweepAxis,
    SweepSpec,
    SweepTable,
    figure_preset,
    rerun_flagged,
    run_dressed_scan,
    run_sweep,
    solve_point,
)


def _fmt(value: float) -> str:
    """17 significant digits: exact round-trip for binary64."""
    return f"{value:.17g}"


# ----------------------------------------------------------------------
# CSV
# ----------------------------------------------------------------------

def write_sweep_csv(table: SweepTable, path: str | Path) -> None:
    """Long-format CSV: axis column(s) then the fixed metric columns."""
    header = list(table.axis_names) + list(METRIC_COLUMNS)
    lines = [",".join(header)]
    for coord, r in zip(table.coords, table.results):
        row = [_fmt(c) for c in coord]
        row += [
            _fmt(v)
            for v in (r.mean_n, r.g2, r.g3, r.log10_g2, r.log10_g3, r.residual)
        ]
        lines.append(",".join(row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_csv(path: str | Path) -> tuple[list[str], list[list[float]]]:
    """Parse a CSV written by this package back into header and rows."""
    text = Path(path).read_text().strip()
    if not text:
        raise ValueError(f"empty CSV: {path}")
    lines = text.splitlines()
    header = lines[0].split(",")
    rows = [[float(cell) for cell in line.split(",")] for line in lines[1:]]
    return header, rows


def write_dressed_csv(rows: list[sweep.DressedScanRow], path: str | Path) -> None:
    header = "omegaD,J,g,phiZ,manifold,index,numeric,closedForm"
    lines = [header]
    for r in rows:
        lines.append(
            ",".join(
                [
                    _fmt(r.omega_d),
                    _fmt(r.J),
                    _fmt(r.g),
                    _fmt(r.phi_z),
                    str(r.manifold),
                    str(r.index),
                    _fmt(r.numeric),
                    _fmt(r.closed_form),
                ]
            )
        )
    Path(path).write_text("\n".join(lines) + "\n")


# ----------------------------------------------------------------------
# config handling
# ----------------------------------------------------------------------

def parse_config_file(path: str | Path) -> dict[str, float]:
    """Read ``key=value`` lines; unknown keys are rejected by name."""
    values: dict[str, float] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, text = line.partition("=")
        key = key.strip()
        if key not in PARAM_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
        try:
            values[key] = float(text.strip())
        except ValueError:
            raise ValueError(
                f"{path}:{lineno}: invalid value for {key}: {text.strip()!r}"
            ) from None
    return values


def build_params(args: argparse.Namespace) -> SystemParams:
    """Merge defaults, config file, and CLI flags into SystemParams."""
    merged: dict[str, float] = {}
    if getattr(args, "config", None):
        merged.update(parse_config_file(args.config))
    for key in PARAM_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
    kwargs = {}
    for key, value in merged.items():
        attr = PARAM_KEYS[key]
        kwargs[attr] = int(value) if key == "fockCutoff" else float(value)
    try:
        return SystemParams(**kwargs)
    except ValueError as exc:
        raise ValueError(f"invalid parameters: {exc}") from exc


#: external key -> (kebab-case alias, help text); both spellings accepted
_FLAG_HELP = {
    "delta": (None, "pump detuning"),
    "g": (None, "atom-field coupling"),
    "phiZ": ("--phi-z", "placement phase of atom 2 (radians)"),
    "J": (None, "dipole-dipole strength"),
    "omegaP": ("--omega-p", "pump Rabi frequency"),
    "omegaD": ("--omega-d", "drive Rabi frequency"),
    "gammaGE": ("--gamma-ge", "decay rate e->g"),
    "gammaSE": ("--gamma-se", "decay rate e->s"),
    "gammaGS": ("--gamma-gs", "decay rate s->g"),
}


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    grp = parser.add_argument_group("model parameters (units of kappa)")
    grp.add_argument("--config", metavar="FILE", help="key=value config file")
    for key, (alias, help_text) in _FLAG_HELP.items():
        names = [f"--{key}"] + ([alias] if alias else [])
        grp.add_argument(*names, dest=key, type=float, default=None, help=help_text)
    grp.add_argument(
        "--fockCutoff", "--fock-cutoff", dest="fockCutoff", type=int,
        default=None, help="largest photon number kept",
    )


def _parse_axis(text: str) -> SweepAxis:
    """param:start:stop:steps or param:v1,v2,... (explicit values)."""
    name, _, rest = text.partition(":")
    if not rest:
        raise ValueError(f"bad axis spec {text!r}")
    if "," in rest and rest.count(":") == 0:
        values = tuple(float(v) for v in rest.split(","))
        return SweepAxis(name, values=values)
    parts = rest.split(":")
    if len(parts) != 3:
        raise ValueError(
            f"bad axis spec {text!r}; expected param:start:stop:steps"
        )
    return SweepAxis(name, float(parts[0]), float(parts[1]), int(parts[2]))


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def _result_json(result: PointResult) -> str:
    def clean(v: float) -> float | None:
        return v if isinstance(v, bool) or math.isfinite(v) else None

    payload = {
        "delta": clean(result.delta),
        "meanN": clean(result.mean_n),
        "g2": clean(result.g2),
        "g3": clean(result.g3),
        "log10g2": clean(result.log10_g2),
        "log10g3": clean(result.log10_g3),
        "residual": clean(result.residual),
        "lowSignal": result.low_signal,
    }
    if result.error:
        payload["error"] = result.error
    return json.dumps(payload, indent=2)


def cmd_steady(args: argparse.Namespace) -> int:
    params = build_params(args)
    result = solve_point(params)
    print(_result_json(result))
    return 0 if result.error is None else 1


def _report_flagged(table: SweepTable) -> None:
    drifts = rerun_flagged(table)
    for idx, drift in drifts:
        print(
            f"converge: row {idx} meanN drift at deeper cutoff: {drift:.3e}",
            file=sys.stderr,
        )
    if not drifts:
        print("converge: no flagged rows", file=sys.stderr)


def cmd_sweep(args: argparse.Namespace) -> int:
    base = build_params(args)
    axis1 = _parse_axis(args.axis1)
    axis2 = _parse_axis(args.axis2) if args.axis2 else None
    spec = SweepSpec(
        base=base, axis1=axis1, axis2=axis2, derived_delta=args.derived_delta
    )
    table = run_sweep(spec)
    write_sweep_csv(table, args.out)
    if args.converge:
        _report_flagged(table)
    print(f"wrote {len(table)} rows to {args.out}", file=sys.stderr)
    return 0


def cmd_dressed(args: argparse.Namespace) -> int:
    base = dr.DressedParams(
        g=args.g if args.g is not None else 20.0,
        phi_z=args.phiZ if args.phiZ is not None else 0.0,
        J=args.J if args.J is not None else 0.0,
        omega_d=args.omegaD if args.omegaD is not None else 0.0,
        omega_c=args.omegaC,
    )
    if args.scan:
        axis = _parse_axis(args.scan)
        if axis.param not in ("omegaD", "J"):
            raise ValueError("dressed scans support omegaD or J axes")
        scan = DressedScan(
            axis_param=axis.param,
            start=axis.start,
            stop=axis.stop,
            steps=axis.steps,
            panels=(base,),
        )
        rows = run_dressed_scan(scan)
    else:
        rows = run_dressed_scan(
            DressedScan(
                axis_param="omegaD",
                start=base.omega_d,
                stop=base.omega_d,
                steps=1,
                panels=(base,),
            )
        )
    write_dressed_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)
    return 0


def cmd_figure(args: argparse.Namespace) -> int:
    preset = figure_preset(args.id)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    out = out_dir / f"{args.id}.csv"
    if isinstance(preset, DressedScan):
        if args.steps1:
            preset = replace(preset, steps=args.steps1)
        rows = run_dressed_scan(preset)
        write_dressed_csv(rows, out)
        print(f"wrote {len(rows)} rows to {out}", file=sys.stderr)
        return 0
    if args.steps1:
        preset = replace(preset, axis1=replace(preset.axis1, steps=args.steps1))
    if args.steps2 and preset.axis2 is not None and preset.axis2.values is None:
        preset = replace(preset, axis2=replace(preset.axis2, steps=args.steps2))
    if args.fockCutoff:
        preset = replace(
            preset, base=replace(preset.base, fock_cutoff=args.fockCutoff)
        )
    table = run_sweep(preset)
    write_sweep_csv(table, out)
    if args.converge:
        _report_flagged(table)
    print(f"wrote {len(table)} rows to {out}", file=sys.stderr)
    return 0


# ----------------------------------------------------------------------
# validate
# ----------------------------------------------------------------------

def _check_projection() -> tuple[bool, str]:
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(5):
        g, j, od = rng.uniform(0.0, 30.0, 3)
        phi = rng.uniform(0.0, 2 * math.pi)
        p_any = dr.DressedParams(g=g, phi_z=phi, J=j, omega_d=od, omega_c=0.4)
        p_sym = dr.DressedParams(g=g, phi_z=0.0, J=j, omega_d=od, omega_c=0.4)
        worst = max(
            worst,
            np.abs(
                dr.project_full_hamiltonian(p_any, 1) - dr.one_photon_matrix(p_any)
            ).max(),
            np.abs(
                dr.project_full_hamiltonian(p_sym, 2) - dr.two_photon_matrix(p_sym)
            ).max(),
        )
    return worst <= dr.PROJECTION_TOL, f"max entry deviation {worst:.2e}"


def _check_closed_forms() -> tuple[bool, str]:
    worst_exact = 0.0
    worst_fit = 0.0
    for j in np.linspace(0.0, 20.0, 4):
        for od in np.linspace(0.0, 30.0, 4):
            for g in np.linspace(10.0, 30.0, 4):
                p = dr.DressedParams(g=g, J=j, omega_d=od)
                ev1 = np.linalg.eigvalsh(dr.one_photon_matrix(p))
                worst_exact = max(
                    worst_exact, np.abs(ev1 - dr.one_photon_energies(p)).max()
                )
                cf = dr.two_photon_closed_form(p)
                ev2 = np.linalg.eigvalsh(dr.two_photon_matrix(p))
                for value, mult in cf.exact_rows():
                    d = np.sort(np.abs(ev2 - value))
                    worst_exact = max(worst_exact, float(d[mult - 1]))
                ev2f = np.linalg.eigvalsh(dr.two_photon_fit_reference_matrix(p))
                for value in cf.fitted_rows():
                    rel = np.abs(ev2f - value).min() / max(abs(value), 1e-12)
                    worst_fit = max(worst_fit, float(rel))
    ok = worst_exact <= 1e-9 and worst_fit <= 0.02
    return ok, f"exact {worst_exact:.2e}, fitted rel {worst_fit:.2%}"


def _check_steady_vs_evolve() -> tuple[bool, str]:
    p = SystemParams(
        delta=3.5 + math.sqrt(49 / 4 + 16 + 800),
        omega_d=4.0,
        J=7.0,
        fock_cutoff=2,
    )
    h = build_hamiltonian(p)
    cs = collapse_operators(p)
    ss = solver.steady_state(solver.build_liouvillian(h, cs))
    rho0 = np.zeros_like(ss.rho)
    rho0[0, 0] = 1.0
    rho_t = solver.evolve(h, cs, rho0, dt=1e-3, t_max=50.0)
    dist = solver.trace_distance(ss.rho, rho_t)
    return dist <= 1e-6, f"trace distance {dist:.2e}"


def _check_coherent_state() -> tuple[bool, str]:
    from .hilbert import SpaceConfig

    cfg = SpaceConfig(20)
    alpha = math.sqrt(0.5)
    amps = np.array(
        [alpha**n / math.sqrt(math.factorial(n)) for n in range(21)],
        dtype=complex,
    )
    amps /= np.linalg.norm(amps)
    psi = np.zeros(cfg.dim, dtype=complex)
    psi[: 21] = amps  # atoms in |gg>, first atomic block
    rho = np.outer(psi, psi.conj())
    dg2 = abs(obs.g2(rho, cfg) - 1.0)
    dg3 = abs(obs.g3(rho, cfg) - 1.0)
    return dg2 <= 1e-5 and dg3 <= 1e-5, f"|g2-1| {dg2:.1e}, |g3-1| {dg3:.1e}"


def _check_cutoff_convergence() -> tuple[bool, str]:
    base = SystemParams(delta=40.266, omega_d=4.0, J=20.0, fock_cutoff=3)
    shallow = solve_point(base)
    deep = solve_point(replace(base, fock_cutoff=5))
    drift = abs(deep.mean_n - shallow.mean_n) / shallow.mean_n
    return drift < 1e-3, f"meanN relative drift {drift:.2e}"


def cmd_validate(args: argparse.Namespace) -> int:
    checks = [
        ("projection-oracle", _check_projection),
        ("closed-form-spectra", _check_closed_forms),
        ("steady-vs-evolve", _check_steady_vs_evolve),
        ("coherent-state-statistics", _check_coherent_state),
        ("cutoff-convergence", _check_cutoff_convergence),
    ]
    failed = False
    for name, check in checks:
        ok, detail = check()
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        failed = failed or not ok
    return 1 if failed else 0


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockade",
        description=(
            "Steady-state photon statistics of a driven cavity coupled to "
            "two dipole-dipole interacting three-level atoms.  All "
            "frequencies and rates are in units of the cavity decay rate."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_steady = sub.add_parser("steady", help="single steady-state solve")
    _add_param_flags(p_steady)
    p_steady.set_defaults(func=cmd_steady)

    p_sweep = sub.add_parser("sweep", help="parameter sweep to CSV")
    _add_param_flags(p_sweep)
    p_sweep.add_argument(
        "--axis1", required=True, help="param:start:stop:steps or param:v1,v2,..."
    )
    p_sweep.add_argument("--axis2", default=None, help="optional second axis")
    p_sweep.add_argument(
        "--derived-delta",
        action="store_true",
        help="set delta per point to the negative analytic emission peak",
    )
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument(
        "--converge",
        action="store_true",
        help="re-run flagged rows at a deeper cutoff and report drift",
    )
    p_sweep.set_defaults(func=cmd_sweep)

    p_dressed = sub.add_parser(
        "dressed", help="manifold eigenvalues, numeric vs closed form"
    )
    for key in ("g", "phiZ", "J", "omegaD"):
        p_dressed.add_argument(f"--{key}", type=float, default=None)
    p_dressed.add_argument("--omegaC", type=float, default=0.0)
    p_dressed.add_argument(
        "--scan", default=None, help="axis spec, e.g. omegaD:0:20:241"
    )
    p_dressed.add_argument("--out", required=True)
    p_dressed.set_defaults(func=cmd_dressed)

    p_figure = sub.add_parser("figure", help="run a bundled preset")
    p_figure.add_argument("id", choices=sweep.FIGURE_IDS)
    p_figure.add_argument("--out", default=".", help="output directory")
    p_figure.add_argument(
        "--steps1", type=int, default=None, help="override axis1 resolution"
    )
    p_figure.add_argument(
        "--steps2", type=int, default=None, help="override axis2 resolution"
    )
    p_figure.add_argument(
        "--fockCutoff", "--fock-cutoff", dest="fockCutoff", type=int,
        default=None, help="override preset cutoff",
    )
    p_figure.add_argument("--converge", action="store_true")
    p_figure.set_defaults(func=cmd_figure)

    p_val = sub.add_parser("validate", help="run the oracle suite")
    p_val.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
