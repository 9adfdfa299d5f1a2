"""Canned parameter sets reproducing the reference figure sweeps.

Each figure is either a family of curves against dimensionless time or a
two-axis surface.  Caption-stated parameters are baked in; curve-family
values that captions leave unstated are documented artifact defaults and
can be overridden.  Generation yields (relative filename, header, rows)
tuples; the CLI wraps them with manifests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .qfi import spectral_qfim_grid
from .metrics import DET_TOL
from .scan import evaluate_target, predicted_phase

SQ2 = math.sqrt(2) / 2
TWO_PI = 2.0 * math.pi

BASE = dict(tau=1.0, temp=0.3, r=1.0, phi_sq=0.0, mu=0.5, alpha=SQ2,
            phi=math.pi / 2)


@dataclass(frozen=True)
class LineFigure:
    """Metric-vs-time curves for a family of one parameter's values."""

    name: str
    metric: str                  # f_phi | f_mu | delta_sim
    family: str
    family_values: tuple
    base: dict
    tau_lo: float = 0.0
    tau_hi: float = 5.0
    tau_count: int = 201


@dataclass(frozen=True)
class SurfaceFigure:
    """Metric over a two-parameter grid, optionally with the unsqueezed
    reference value and phase-matched cut curves."""

    name: str
    metric: str                  # any scan target
    axis1: tuple                 # (param, lo, hi, count)
    axis2: tuple
    base: dict
    reference_r0: bool = False
    matched_curves: tuple = ()   # cut curves: ("phase",) and/or ("mu",)


def _with(base: dict, **kw) -> dict:
    out = dict(base)
    out.update(kw)
    return out


FIGURES: dict[str, LineFigure | SurfaceFigure] = {}

def _register(fig) -> None:
    FIGURES[fig.name] = fig


# phase-information decay curves (Phi = 0, phi = pi/2)
_register(LineFigure("fig2a", "f_phi", "temp", (0.1, 0.3, 0.5),
                     _with(BASE, mu=0.0, r=0.0)))
_register(LineFigure("fig2b", "f_phi", "mu", (0.0, 0.3, 0.6, 0.9),
                     _with(BASE, temp=0.3, r=0.0)))
_register(LineFigure("fig2c", "f_phi", "r", (0.0, 0.5, 1.0),
                     _with(BASE, temp=0.3, mu=0.9)))
_register(LineFigure("fig3a", "f_phi", "phi_sq",
                     (0.0, math.pi / 2, math.pi, 3 * math.pi / 2),
                     _with(BASE, temp=0.3, mu=0.9, r=1.0)))
_register(SurfaceFigure("fig3b", "f_phi", ("phi_sq", 0.0, TWO_PI, 73),
                        ("r", 0.0, 2.0, 41),
                        _with(BASE, temp=0.3, mu=0.9), reference_r0=True))
_register(SurfaceFigure("fig4a", "f_phi_imp", ("phi_sq", 0.0, TWO_PI, 73),
                        ("phi", 0.0, TWO_PI, 73), _with(BASE, mu=0.1)))
_register(SurfaceFigure("fig4b", "f_phi_imp", ("phi_sq", 0.0, TWO_PI, 73),
                        ("phi", 0.0, TWO_PI, 73), _with(BASE, mu=0.9)))
_register(SurfaceFigure("fig5a", "f_phi_imp", ("phi_sq", 0.0, TWO_PI, 73),
                        ("mu", 0.0, 1.0, 51), _with(BASE, phi=0.0)))
_register(SurfaceFigure("fig5b", "f_phi_imp", ("phi_sq", 0.0, TWO_PI, 73),
                        ("mu", 0.0, 1.0, 51), _with(BASE, phi=math.pi / 2)))

# correlation-factor information (Phi = pi, phi = pi/2)
_register(LineFigure("fig6a", "f_mu", "temp", (0.5, 1.0, 1.5),
                     _with(BASE, phi_sq=math.pi, mu=0.9, r=0.0)))
_register(LineFigure("fig6b", "f_mu", "r", (0.0, 0.5, 1.0),
                     _with(BASE, phi_sq=math.pi, temp=1.0, mu=0.9)))
_register(LineFigure("fig6c", "f_mu", "mu", (0.3, 0.6, 0.9),
                     _with(BASE, phi_sq=math.pi, temp=1.0, r=1.0)))
_register(LineFigure("fig7a", "f_mu", "phi_sq",
                     (0.0, math.pi / 2, math.pi, 3 * math.pi / 2),
                     _with(BASE, temp=1.0, mu=0.9, r=1.0)))
_register(SurfaceFigure("fig7b", "f_mu", ("phi_sq", 0.0, TWO_PI, 73),
                        ("r", 0.0, 2.0, 41),
                        _with(BASE, temp=1.0, mu=0.9), reference_r0=True))
_register(SurfaceFigure("fig8a", "f_mu_imp", ("phi_sq", 0.0, TWO_PI, 73),
                        ("phi", 0.0, TWO_PI, 73),
                        _with(BASE, temp=1.0, mu=0.1)))
_register(SurfaceFigure("fig8b", "f_mu_imp", ("phi_sq", 0.0, TWO_PI, 73),
                        ("phi", 0.0, TWO_PI, 73),
                        _with(BASE, temp=1.0, mu=0.9)))
_register(SurfaceFigure("fig9", "f_mu_imp", ("phi", 0.0, TWO_PI, 101),
                        ("mu", 0.0, 1.0, 101),
                        _with(BASE, temp=1.0, phi_sq=math.pi)))

# joint estimation (Phi = 0, phi = pi/2 for the time curves)
_register(LineFigure("fig10a", "delta_sim", "temp", (0.1, 0.3, 0.5),
                     _with(BASE, mu=0.9, r=1.0), tau_lo=0.025, tau_count=200))
_register(LineFigure("fig10b", "delta_sim", "r", (0.0, 0.5, 1.0),
                     _with(BASE, temp=0.3, mu=0.9), tau_lo=0.025,
                     tau_count=200))
_register(SurfaceFigure("fig11a", "inv_delta_sim", ("phi", 0.0, TWO_PI, 73),
                        ("phi_sq", 0.0, TWO_PI, 73), _with(BASE, mu=0.1),
                        matched_curves=("phase", "mu")))
_register(SurfaceFigure("fig11b", "inv_delta_sim", ("phi", 0.0, TWO_PI, 73),
                        ("phi_sq", 0.0, TWO_PI, 73), _with(BASE, mu=0.9),
                        matched_curves=("phase", "mu")))
_register(SurfaceFigure("fig12a", "ratio_r", ("phi", 0.0, TWO_PI, 73),
                        ("phi_sq", 0.0, TWO_PI, 73), _with(BASE, mu=0.1),
                        matched_curves=("phase",)))
_register(SurfaceFigure("fig12b", "ratio_r", ("phi", 0.0, TWO_PI, 73),
                        ("phi_sq", 0.0, TWO_PI, 73), _with(BASE, mu=0.9),
                        matched_curves=("phase",)))

FIGURE_NAMES = tuple(sorted(FIGURES))


def _line_metric(metric: str, taus: np.ndarray, base: dict) -> np.ndarray:
    params = dict(base)
    params["tau"] = taus
    f_phi, f_mu, f_muphi = spectral_qfim_grid(**params)
    if metric == "f_phi":
        return f_phi
    if metric == "f_mu":
        return f_mu
    if metric == "delta_sim":
        det = f_phi * f_mu - f_muphi**2
        ok = (f_phi > 0) & (f_mu > 0) & (det > DET_TOL)
        return np.where(ok, 0.5 * (f_phi + f_mu) / np.where(ok, det, 1.0),
                        np.nan)
    raise ValueError(f"unknown line metric {metric!r}")


def generate_line(fig: LineFigure, family_values=None):
    """(header, rows) for a curve-family figure."""
    values = tuple(family_values) if family_values else fig.family_values
    taus = np.linspace(fig.tau_lo, fig.tau_hi, fig.tau_count)
    header = ["tau"]
    columns = []
    for v in values:
        base = _with(fig.base, **{fig.family: float(v)})
        base.pop("tau")
        header.append(f"{fig.metric}[{fig.family}={v:g}]")
        columns.append(_line_metric(fig.metric, taus, base))
    rows = [(taus[i], *(c[i] for c in columns)) for i in range(len(taus))]
    return header, rows


def generate_surface(fig: SurfaceFigure):
    """Main (header, rows) plus optional matched-curve (header, rows)."""
    n1, n2 = fig.axis1[3], fig.axis2[3]
    ax1 = np.linspace(fig.axis1[1], fig.axis1[2], n1)
    ax2 = np.linspace(fig.axis2[1], fig.axis2[2], n2)
    params = dict(fig.base)
    params[fig.axis1[0]] = ax1[:, None]
    params[fig.axis2[0]] = ax2[None, :]
    values, valid = evaluate_target(fig.metric, **params)
    values = np.broadcast_to(values, (n1, n2))
    valid = np.broadcast_to(valid, (n1, n2))
    header = [fig.axis1[0], fig.axis2[0], fig.metric, "valid"]
    ref = None
    if fig.reference_r0:
        ref_params = _with(fig.base, r=0.0)
        rv, _ = evaluate_target(fig.metric, **ref_params)
        ref = float(rv)
        header.append(f"{fig.metric}_r0")
    rows = []
    for i in range(n1):
        for j in range(n2):
            row = [ax1[i], ax2[j], values[i, j], bool(valid[i, j])]
            if ref is not None:
                row.append(ref)
            rows.append(tuple(row))
    out = [(header, rows)]
    if fig.matched_curves:
        out.append(_matched_curves(fig, ax1))
    return out


def _matched_curves(fig: SurfaceFigure, phis: np.ndarray):
    """Cut curves along the phase-matched squeezing phases.

    For each encoded phase the squeezing phase is pinned to the predicted
    optimum (smallest solution in the weak-correlation regime) of the
    phase-information condition and, when requested, of the
    correlation-factor condition.
    """
    regime = "small_mu" if fig.base["mu"] <= 0.5 else "large_mu"
    header = ["phi"]
    cuts = []
    for kind in fig.matched_curves:
        target = "f_phi_imp" if kind == "phase" else "f_mu_imp"
        header.append(f"{fig.metric}_{kind}_matched")
        phases = np.array([predicted_phase(target, regime, float(p))[0]
                           for p in phis])
        params = dict(fig.base)
        params["phi"] = phis
        params["phi_sq"] = phases
        vals, _ = evaluate_target(fig.metric, **params)
        cuts.append(np.broadcast_to(vals, phis.shape))
    rows = [(phis[i], *(c[i] for c in cuts)) for i in range(len(phis))]
    return header, rows


def generate_figure(name: str, family_values=None):
    """All CSV payloads for one figure: list of (suffix, header, rows).

    The first payload's suffix is empty (the main CSV); matched-curve
    payloads use the "_matched" suffix.
    """
    fig = FIGURES[name]
    if isinstance(fig, LineFigure):
        header, rows = generate_line(fig, family_values)
        return [("", header, rows)]
    payloads = generate_surface(fig)
    out = [("", *payloads[0])]
    if len(payloads) > 1:
        out.append(("_matched", *payloads[1]))
    return out
