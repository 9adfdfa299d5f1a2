"""Command-line front end: evolve states, tabulate information metrics,
run squeezing-phase scans, and emit figure-reproduction CSV datasets.

Every command writes deterministic CSVs with an embedded manifest; the
``replay`` command regenerates a CSV byte-for-byte from its manifest.
Exit codes: 0 ok, 2 usage error, 3 numeric failure, 4 verification
failure.  SQZMET_THREADS caps grid-evaluation parallelism (0 = all
cores, unset = serial).
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

import click
import numpy as np

from . import __version__
from .core import PhysicalConfig, analytic_state, min_eigenvalue
from .csvio import RunManifest, read_manifest, write_csv
from .errors import AllInvalidGridError, NumericError
from .figures import FIGURE_NAMES, generate_figure
from .lindblad import IntegratorSettings, integrate
from .metrics import DET_TOL
from .qfi import closed_f_mu_grid, closed_f_muphi_grid, closed_f_phi_grid, \
    spectral_qfim_grid
from .scan import AXES, PHASE_TARGETS, TARGETS, AxisSpec, ScanSpec, scan, \
    verify_table1

EXIT_NUMERIC = 3
EXIT_VERIFY = 4

ANGULAR_PARAMS = ("phi", "phi_sq")

DEFAULTS = dict(tau=1.0, temp=0.3, r=1.0, phi_sq=0.0, mu=0.5,
                alpha=math.sqrt(2) / 2, phi=math.pi / 2)

AXIS_DEFAULTS = {
    "phi_sq": (0.0, 2 * math.pi, 721),
    "phi": (0.0, 2 * math.pi, 73),
    "mu": (0.0, 1.0, 51),
    "r": (0.0, 2.0, 41),
    "tau": (0.0, 5.0, 101),
    "temp": (0.05, 2.0, 40),
}

FIG12_BASE = dict(tau=1.0, temp=0.3, r=1.0, alpha=math.sqrt(2) / 2)


def _physical_options(include_tau: bool):
    def deco(f):
        opts = [
            click.option("--config", "config_file", type=click.Path(exists=True),
                         default=None, help="Flat key=value file with defaults "
                         "for the physical parameters; flags override it."),
            click.option("--deg", is_flag=True,
                         help="Interpret angle flags in degrees."),
            click.option("--phi", type=float, default=None,
                         help="Encoded phase."),
            click.option("--alpha", type=float, default=None,
                         help="Initial |00> amplitude."),
            click.option("--mu", type=float, default=None,
                         help="Correlation factor in [0, 1]."),
            click.option("--phi-sq", type=float, default=None,
                         help="Squeezing phase."),
            click.option("--r", type=float, default=None,
                         help="Squeezing strength."),
            click.option("--temp", type=float, default=None,
                         help="Reservoir temperature (mode-quantum units)."),
        ]
        if include_tau:
            opts.append(click.option("--tau", type=float, default=None,
                                     help="Dimensionless evolution time."))
        for opt in opts:
            f = opt(f)
        return f
    return deco


def _read_config_file(path: str) -> dict:
    out = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise click.UsageError(f"bad config line {raw!r} (expected key=value)")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in DEFAULTS:
            raise click.UsageError(f"unknown config key {key!r}")
        try:
            out[key] = float(value.strip())
        except ValueError as exc:
            raise click.UsageError(f"bad config value in {raw!r}") from exc
    return out


def _resolve_params(flags: dict, config_file, deg: bool,
                    include_tau: bool) -> dict:
    """Builtin defaults < config file < explicit flags; degrees converted."""
    params = {k: v for k, v in DEFAULTS.items() if include_tau or k != "tau"}
    if config_file:
        file_vals = _read_config_file(config_file)
        params.update({k: v for k, v in file_vals.items() if k in params})
    for key in params:
        if flags.get(key) is not None:
            value = flags[key]
            if deg and key in ANGULAR_PARAMS:
                value = math.radians(value)
            params[key] = float(value)
    return params


def _config_from(params: dict, **overrides) -> PhysicalConfig:
    merged = dict(params)
    merged.update(overrides)
    try:
        return PhysicalConfig(**merged)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _guarded(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (NumericError, FloatingPointError, AllInvalidGridError) as exc:
        click.echo(f"numeric failure: {exc}", err=True)
        sys.exit(EXIT_NUMERIC)


@click.group()
@click.version_option(version=__version__, prog_name="sqzmet")
def main() -> None:
    """Two-qubit metrology in a correlated squeezed-thermal reservoir."""


# ---------------------------------------------------------------- evolve

def run_evolve(options: dict) -> Path:
    params = {k: options[k] for k in
              ("temp", "r", "phi_sq", "mu", "alpha", "phi")}
    tau_max = options["tau_max"]
    if tau_max == 0.0:
        taus = np.array([0.0])
    else:
        taus = np.linspace(0.0, tau_max, options["tau_count"])
    settings = IntegratorSettings(step=options["step"])
    rows = []
    for tau in taus:
        cfg = _config_from(params, tau=float(tau))
        if options["method"] == "analytic":
            rho = analytic_state(cfg)
        else:
            rho = integrate(cfg, settings)
        if not np.all(np.isfinite(rho.view(float))):
            raise NumericError(f"non-finite state at tau={tau}")
        row = [float(tau)]
        for i in range(4):
            for j in range(4):
                row.extend((rho[i, j].real, rho[i, j].imag))
        row.append(float(np.trace(rho).real))
        row.append(min_eigenvalue(rho))
        rows.append(tuple(row))
    header = ["tau"]
    for i in range(1, 5):
        for j in range(1, 5):
            header.extend((f"rho{i}{j}_re", f"rho{i}{j}_im"))
    header.extend(("trace", "min_eig"))
    manifest = RunManifest("evolve", __version__, options, options["out"])
    return write_csv(manifest, header, rows)


@main.command()
@_physical_options(include_tau=False)
@click.option("--tau-max", type=float, default=5.0, show_default=True)
@click.option("--tau-count", type=click.IntRange(min=1), default=101,
              show_default=True)
@click.option("--method", type=click.Choice(["analytic", "ode"]),
              default="analytic", show_default=True)
@click.option("--step", type=float, default=1e-4, show_default=True,
              help="Fixed integrator step (ode method).")
@click.option("--out", type=click.Path(), default="evolve.csv",
              show_default=True)
def evolve(config_file, deg, tau_max, tau_count, method, step, out, **flags):
    """Write the state trajectory as (tau, elements, trace, min eigenvalue)."""
    params = _resolve_params(flags, config_file, deg, include_tau=False)
    if tau_max < 0:
        raise click.UsageError("--tau-max must be >= 0")
    try:
        IntegratorSettings(step=step)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    options = dict(sorted({**params, "tau_max": tau_max,
                           "tau_count": tau_count, "method": method,
                           "step": step, "out": str(out)}.items()))
    path = _guarded(run_evolve, options)
    click.echo(f"wrote {path}")


# ------------------------------------------------------------------- qfi

def run_qfi(options: dict) -> Path:
    params = {k: options[k] for k in DEFAULTS}
    axis = options["axis"]
    grid = np.linspace(options["axis_min"], options["axis_max"],
                       options["axis_count"])
    sweep = dict(params)
    sweep[axis] = grid
    if options["method"] == "spectral":
        f_phi, f_mu, f_muphi = spectral_qfim_grid(**sweep)
    else:
        f_phi = closed_f_phi_grid(**sweep)
        f_mu = closed_f_mu_grid(**sweep)
        f_muphi = closed_f_muphi_grid(**sweep)
    f_phi, f_mu, f_muphi = (np.broadcast_to(a, grid.shape)
                            for a in (f_phi, f_mu, f_muphi))
    det = f_phi * f_mu - f_muphi**2
    valid = (np.isfinite(f_phi) & np.isfinite(f_mu) & np.isfinite(f_muphi)
             & (f_phi > 0) & (f_mu > 0) & (det > DET_TOL))
    safe_det = np.where(valid, det, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        delta_ind = np.where(valid, 1.0 / f_mu + 1.0 / f_phi, np.nan)
        delta_sim = np.where(valid, 0.5 * (f_mu + f_phi) / safe_det, np.nan)
        ratio_r = np.where(valid, delta_ind / delta_sim, np.nan)
    rows = [(grid[i], f_phi[i], f_mu[i], f_muphi[i], delta_ind[i],
             delta_sim[i], ratio_r[i], bool(valid[i]))
            for i in range(grid.size)]
    header = [axis, "f_phi", "f_mu", "f_muphi", "delta_ind", "delta_sim",
              "ratio_r", "valid"]
    manifest = RunManifest("qfi", __version__, options, options["out"])
    return write_csv(manifest, header, rows)


@main.command()
@_physical_options(include_tau=True)
@click.option("--method", type=click.Choice(["spectral", "closed"]),
              default="spectral", show_default=True)
@click.option("--axis", type=click.Choice(list(AXES)), default="tau",
              show_default=True, help="Swept parameter.")
@click.option("--axis-min", type=float, default=None)
@click.option("--axis-max", type=float, default=None)
@click.option("--axis-count", type=click.IntRange(min=2), default=None)
@click.option("--out", type=click.Path(), default="qfi.csv", show_default=True)
def qfi(config_file, deg, method, axis, axis_min, axis_max, axis_count, out,
        **flags):
    """Tabulate information-matrix elements and variance bounds on a sweep."""
    params = _resolve_params(flags, config_file, deg, include_tau=True)
    lo, hi, count = AXIS_DEFAULTS[axis]
    axis_min = lo if axis_min is None else axis_min
    axis_max = hi if axis_max is None else axis_max
    axis_count = count if axis_count is None else axis_count
    if deg and axis in ANGULAR_PARAMS:
        axis_min, axis_max = math.radians(axis_min), math.radians(axis_max)
    if not axis_min < axis_max:
        raise click.UsageError("--axis-min must be below --axis-max")
    options = dict(sorted({**params, "method": method, "axis": axis,
                           "axis_min": axis_min, "axis_max": axis_max,
                           "axis_count": axis_count, "out": str(out)}.items()))
    path = _guarded(run_qfi, options)
    click.echo(f"wrote {path}")


# ------------------------------------------------------------------ scan

def run_scan(options: dict) -> tuple[Path, dict]:
    base = _config_from({k: options[k] for k in DEFAULTS})
    sweep = AxisSpec(options["axis"], options["axis_min"],
                     options["axis_max"], options["axis_count"])
    secondary = None
    if options["axis2"]:
        secondary = AxisSpec(options["axis2"], options["axis2_min"],
                             options["axis2_max"], options["axis2_count"])
    try:
        spec = ScanSpec(options["target"], sweep, base, secondary)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    result = scan(spec)

    header = [sweep.name]
    if secondary is not None:
        header.append(secondary.name)
    header.extend((options["target"], "valid"))
    rows = []
    if secondary is None:
        for i, x in enumerate(result.axes[0]):
            rows.append((x, result.values[i], bool(result.valid[i])))
    else:
        for i, x in enumerate(result.axes[0]):
            for j, y in enumerate(result.axes[1]):
                rows.append((x, y, result.values[i, j],
                             bool(result.valid[i, j])))
    manifest = RunManifest("scan", __version__, options, options["out"])
    path = write_csv(manifest, header, rows)

    summary = {
        "argbest": result.argbest,
        "best": result.best,
        "predicted": result.predicted,
        "deviation": result.deviation,
        "step": sweep.step,
        "min_valid": float(np.min(result.values[result.valid])),
        "max_valid": float(np.max(result.values[result.valid])),
    }
    return path, summary


@main.command(name="scan")
@_physical_options(include_tau=True)
@click.option("--target", type=click.Choice(list(TARGETS)),
              default="f_phi_imp", show_default=True)
@click.option("--axis", type=click.Choice(list(AXES)), default="phi_sq",
              show_default=True)
@click.option("--axis-min", type=float, default=None)
@click.option("--axis-max", type=float, default=None)
@click.option("--axis-count", type=click.IntRange(min=2), default=None)
@click.option("--axis2", type=click.Choice(list(AXES)), default=None)
@click.option("--axis2-min", type=float, default=None)
@click.option("--axis2-max", type=float, default=None)
@click.option("--axis2-count", type=click.IntRange(min=2), default=None)
@click.option("--verify", is_flag=True,
              help="Check the optimum against the phase-matching "
              "prediction (or the advantage bounds for ratio_r); exit 4 "
              "on failure.")
@click.option("--tol-steps", type=float, default=2.0, show_default=True,
              help="Verification tolerance in grid steps.")
@click.option("--fig12", "fig12", is_flag=True,
              help="Preset: ratio_r over the squeezing-phase/encoded-phase "
              "plane at the joint-estimation figure parameters.")
@click.option("--out", type=click.Path(), default="scan.csv",
              show_default=True)
def scan_cmd(config_file, deg, target, axis, axis_min, axis_max, axis_count,
             axis2, axis2_min, axis2_max, axis2_count, verify, tol_steps,
             fig12, out, **flags):
    """Scan a metric over a parameter grid and locate its optimum."""
    params = _resolve_params(flags, config_file, deg, include_tau=True)
    if fig12:
        for key, value in FIG12_BASE.items():
            if flags.get(key) is None:
                params[key] = value
        target = "ratio_r" if target == "f_phi_imp" else target
        axis2 = axis2 or "phi"
        if axis_count is None:
            axis_count = 73

    def axis_bounds(name, lo, hi, count):
        d_lo, d_hi, d_count = AXIS_DEFAULTS[name]
        lo = d_lo if lo is None else lo
        hi = d_hi if hi is None else hi
        count = d_count if count is None else count
        if deg and name in ANGULAR_PARAMS:
            lo, hi = math.radians(lo), math.radians(hi)
        if not lo < hi:
            raise click.UsageError(f"axis {name}: min must be below max")
        return lo, hi, count

    axis_min, axis_max, axis_count = axis_bounds(axis, axis_min, axis_max,
                                                 axis_count)
    options = {**params, "target": target, "axis": axis,
               "axis_min": axis_min, "axis_max": axis_max,
               "axis_count": axis_count, "axis2": axis2,
               "axis2_min": None, "axis2_max": None, "axis2_count": None,
               "verify": verify, "tol_steps": tol_steps, "out": str(out)}
    if axis2:
        a2 = axis_bounds(axis2, axis2_min, axis2_max, axis2_count)
        options["axis2_min"], options["axis2_max"], options["axis2_count"] = a2
    options = dict(sorted(options.items()))

    path, summary = _guarded(run_scan, options)
    click.echo(f"wrote {path}")
    coords = ", ".join(f"{n}={v:.10g}" for n, v in
                       zip([axis] + ([axis2] if axis2 else []),
                           summary["argbest"]))
    click.echo(f"argbest: {coords}")
    click.echo(f"best: {summary['best']:.10g}")
    if summary["predicted"] is not None:
        preds = ", ".join(f"{p:.10g}" for p in summary["predicted"])
        steps = summary["deviation"] / summary["step"]
        click.echo(f"predicted: {preds}")
        click.echo(f"deviation: {summary['deviation']:.10g} ({steps:.2f} steps)")
    if verify:
        if target in PHASE_TARGETS and axis == "phi_sq":
            ok = summary["deviation"] <= tol_steps * summary["step"]
        elif target == "ratio_r":
            ok = (summary["min_valid"] >= 1.0 - 1e-9
                  and summary["max_valid"] <= 2.0 + 1e-9)
        else:
            raise click.UsageError(
                f"--verify is not defined for target {target!r} on axis {axis!r}")
        click.echo(f"verify: {'pass' if ok else 'FAIL'}")
        if not ok:
            sys.exit(EXIT_VERIFY)


# ---------------------------------------------------------------- figure

def run_figure(options: dict) -> list[Path]:
    name = options["name"]
    family = options.get("family")
    payloads = generate_figure(name, family_values=family)
    written = []
    for suffix, header, rows in payloads:
        out = str(Path(options["outdir"]) / f"{name}{suffix}.csv")
        manifest = RunManifest("figure", __version__, options, out)
        written.append(write_csv(manifest, header, rows))
    return written


@main.command()
@click.argument("name")
@click.option("--outdir", type=click.Path(file_okay=False), default=".",
              show_default=True)
@click.option("--family", default=None,
              help="Comma-separated override of the curve-family values "
              "(line figures only).")
def figure(name, outdir, family):
    """Emit the CSV dataset(s) behind one reference figure."""
    if name not in FIGURE_NAMES:
        raise click.UsageError(
            f"unknown figure {name!r}; choices: {', '.join(FIGURE_NAMES)}")
    values = None
    if family is not None:
        try:
            values = tuple(float(v) for v in family.split(","))
        except ValueError as exc:
            raise click.UsageError(f"bad --family {family!r}") from exc
    options = dict(sorted({"name": name, "outdir": str(outdir),
                           "family": values}.items()))
    for path in _guarded(run_figure, options):
        click.echo(f"wrote {path}")


# ---------------------------------------------------------------- replay

RUNNERS = {
    "evolve": run_evolve,
    "qfi": run_qfi,
    "scan": lambda options: run_scan(options)[0],
    "figure": run_figure,
}


@main.command()
@click.argument("manifest_path", type=click.Path(exists=True))
def replay(manifest_path):
    """Regenerate a CSV byte-for-byte from its manifest (sidecar or CSV)."""
    manifest = read_manifest(manifest_path)
    runner = RUNNERS.get(manifest.command)
    if runner is None:
        raise click.UsageError(f"manifest for unknown command "
                               f"{manifest.command!r}")
    if manifest.version != __version__:
        click.echo(f"note: manifest written by version {manifest.version}, "
                   f"running {__version__}", err=True)
    options = dict(manifest.options)
    if isinstance(options.get("family"), list):
        options["family"] = tuple(options["family"])
    result = _guarded(runner, options)
    paths = result if isinstance(result, list) else [result]
    for path in paths:
        click.echo(f"wrote {path}")


# ---------------------------------------------------------------- table1

@main.command()
@click.option("--grid-points", type=click.IntRange(min=360), default=721,
              show_default=True)
@click.option("--tol-steps", type=float, default=2.0, show_default=True)
def table1(grid_points, tol_steps):
    """Verify the six phase-matching conditions near both correlation
    endpoints; exit 4 if any cell misses the tolerance."""
    report = _guarded(verify_table1, grid_points=grid_points,
                      tolerance_steps=tol_steps)
    for row in report.rows:
        status = "pass" if row.deviation_steps <= tol_steps else "FAIL"
        click.echo(f"{row.target:14s} {row.regime:9s} mu={row.mu:<5g} "
                   f"phi={row.phi:<9.6g} argbest={row.argbest:<9.6g} "
                   f"deviation={row.deviation_steps:6.2f} steps  {status}")
    for row in report.intermediate_rows:
        click.echo(f"{row.target:14s} {row.regime:9s} mu={row.mu:<5g} "
                   f"phi={row.phi:<9.6g} argbest={row.argbest:<9.6g} "
                   f"(reported only)")
    click.echo(f"joint-vs-phase max deviation: "
               f"{max(report.joint_deviations):.6g} rad")
    click.echo(f"table1: {'pass' if report.passed else 'FAIL'}")
    if not report.passed:
        sys.exit(EXIT_VERIFY)


if __name__ == "__main__":
    main()
