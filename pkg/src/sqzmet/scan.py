"""Grid scans over the squeezing phase and verification of phase matching.

The squeezing enhancement of either information (and of the joint
variance bound) depends on the relation between the squeezing phase and
the encoded phase.  In the weak-correlation limit the optimum solves
``cos(2 Phi - 2 phi) = ±1`` (two solutions, period pi); in the
strong-correlation limit it solves ``cos(Phi - 2 phi) = ±1`` (one
solution, period 2 pi).  The sign is minus for the phase information and
the joint bound, plus for the correlation-factor information.  This
module scans metric grids, locates optima deterministically, and checks
them against those predictions near the correlation endpoints.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import PhysicalConfig
from .errors import AllInvalidGridError
from .qfi import closed_f_mu_grid, closed_f_muphi_grid, closed_f_phi_grid, \
    spectral_qfim_grid
from .metrics import DET_TOL

__all__ = [
    "AxisSpec",
    "ScanResult",
    "ScanSpec",
    "Table1Report",
    "predicted_phase",
    "scan",
    "verify_table1",
]

TARGETS = ("f_phi_imp", "f_mu_imp", "inv_delta_sim", "f_phi", "f_mu", "ratio_r")
PHASE_TARGETS = ("f_phi_imp", "f_mu_imp", "inv_delta_sim")
AXES = ("phi_sq", "phi", "mu", "r", "tau", "temp")
TWO_PI = 2.0 * math.pi

# reservoir temperatures used for the endpoint verification, one per target
TABLE1_TEMPS = {"f_phi_imp": 0.3, "f_mu_imp": 1.0, "inv_delta_sim": 0.3}
TABLE1_PHIS = (0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4)


@dataclass(frozen=True)
class AxisSpec:
    """One swept parameter axis: ``count`` points from ``lo`` to ``hi``
    inclusive."""

    name: str
    lo: float
    hi: float
    count: int

    def __post_init__(self) -> None:
        if self.name not in AXES:
            raise ValueError(f"unknown axis {self.name!r}")
        if self.count < 2:
            raise ValueError("axis needs at least 2 points")
        if not self.lo < self.hi:
            raise ValueError("axis needs lo < hi")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (self.count - 1)


@dataclass(frozen=True)
class ScanSpec:
    """A metric target, one or two swept axes, and base values for the
    remaining dials."""

    target: str
    sweep: AxisSpec
    base: PhysicalConfig
    secondary: AxisSpec | None = None

    def __post_init__(self) -> None:
        if self.target not in TARGETS:
            raise ValueError(f"unknown target {self.target!r}")
        if self.secondary is not None and self.secondary.name == self.sweep.name:
            raise ValueError("swept axes must be distinct")


@dataclass(frozen=True)
class ScanResult:
    """Metric values over the grid with the located optimum.

    ``values``/``valid`` have shape ``(sweep.count,)`` or
    ``(sweep.count, secondary.count)``.  ``argbest`` holds the axis
    coordinates of the maximum over valid points (earliest grid point on
    ties).  For squeezing-phase sweeps of the phase-matched targets,
    ``predicted`` carries the near-optimal solutions and ``deviation``
    the periodic distance between the found and predicted optimum.
    """

    spec: ScanSpec
    axes: tuple[np.ndarray, ...]
    values: np.ndarray
    valid: np.ndarray
    argbest: tuple[float, ...]
    best: float
    predicted: tuple[float, ...] | None = None
    deviation: float | None = None


def _n_workers() -> int:
    raw = os.environ.get("SQZMET_THREADS", "").strip()
    if not raw:
        return 1
    count = int(raw)
    if count == 0:
        return os.cpu_count() or 1
    return max(1, count)


def _metric_arrays(target: str, tau, temp, r, phi_sq, mu, alpha, phi):
    """Evaluate one target over broadcasted parameter arrays.

    Returns (values, valid); singular information matrices are flagged
    invalid for the ratio and joint-bound targets.
    """
    if target == "f_phi":
        f_phi, _, _ = spectral_qfim_grid(tau, temp, r, phi_sq, mu, alpha, phi)
        return f_phi, np.ones_like(f_phi, dtype=bool)
    if target == "f_mu":
        _, f_mu, _ = spectral_qfim_grid(tau, temp, r, phi_sq, mu, alpha, phi)
        return f_mu, np.ones_like(f_mu, dtype=bool)
    if target == "f_phi_imp":
        f_phi, _, _ = spectral_qfim_grid(tau, temp, r, phi_sq, mu, alpha, phi)
        f0, _, _ = spectral_qfim_grid(tau, temp, 0.0, phi_sq, mu, alpha, phi)
        vals = f_phi - f0
        return vals, np.ones_like(vals, dtype=bool)
    if target == "f_mu_imp":
        _, f_mu, _ = spectral_qfim_grid(tau, temp, r, phi_sq, mu, alpha, phi)
        _, f0, _ = spectral_qfim_grid(tau, temp, 0.0, phi_sq, mu, alpha, phi)
        vals = f_mu - f0
        return vals, np.ones_like(vals, dtype=bool)
    f_phi, f_mu, f_muphi = spectral_qfim_grid(tau, temp, r, phi_sq, mu, alpha, phi)
    det = f_phi * f_mu - f_muphi**2
    valid = (f_phi > 0.0) & (f_mu > 0.0) & (det > DET_TOL)
    safe_det = np.where(valid, det, 1.0)
    if target == "inv_delta_sim":
        vals = np.where(valid, 2.0 * safe_det / (f_phi + f_mu), np.nan)
        return vals, valid
    if target == "ratio_r":
        vals = np.where(valid, 2.0 * safe_det /
                        np.where(valid, f_phi * f_mu, 1.0), np.nan)
        return vals, valid
    raise ValueError(f"unknown target {target!r}")


def _eval_chunk(args):
    target, arrays = args
    return _metric_arrays(target, *arrays)


def evaluate_target(target: str, tau, temp, r, phi_sq, mu, alpha, phi):
    """Like :func:`_metric_arrays`, splitting 1-D work across processes
    when SQZMET_THREADS asks for parallelism (0 means all cores).

    Chunking never changes the values: every grid point is evaluated
    independently, and results are concatenated in grid order.
    """
    workers = _n_workers()
    arrays = np.broadcast_arrays(
        np.asarray(tau, float), np.asarray(temp, float), np.asarray(r, float),
        np.asarray(phi_sq, float), np.asarray(mu, float),
        np.asarray(alpha, float), np.asarray(phi, float))
    size = arrays[0].size
    if workers <= 1 or size < 64 or arrays[0].ndim != 1:
        return _metric_arrays(target, *arrays)
    splits = [np.array_split(a, workers) for a in arrays]
    jobs = [(target, tuple(s[i] for s in splits)) for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_eval_chunk, jobs))
    values = np.concatenate([p[0] for p in parts])
    valid = np.concatenate([p[1] for p in parts])
    return values, valid


def _fold_distance(a: float, b: float, period: float) -> float:
    """Distance between angles ``a`` and ``b`` on a circle of ``period``."""
    delta = math.fmod(a - b, period)
    if delta < 0:
        delta += period
    return min(delta, period - delta)


def predicted_phase(target: str, regime: str, phi: float) -> tuple[float, ...]:
    """Near-optimal squeezing phases for a phase-matched target.

    ``regime`` is "small_mu" or "large_mu".  Solutions are returned in
    ``[0, 2 pi)``; the weak-correlation conditions have period pi and
    therefore two representatives.
    """
    if target not in PHASE_TARGETS:
        raise ValueError(f"no phase-matching prediction for target {target!r}")
    sign = 1.0 if target == "f_mu_imp" else -1.0
    if regime == "small_mu":
        # cos(2 Phi - 2 phi) = sign
        first = phi if sign > 0 else phi + math.pi / 2
        first %= math.pi
        return tuple(sorted((first, first + math.pi)))
    if regime == "large_mu":
        # cos(Phi - 2 phi) = sign
        sol = (2.0 * phi if sign > 0 else 2.0 * phi + math.pi) % TWO_PI
        return (sol,)
    raise ValueError(f"unknown regime {regime!r}")


def _grid_params(spec: ScanSpec):
    axes = [spec.sweep.values()]
    names = [spec.sweep.name]
    if spec.secondary is not None:
        axes.append(spec.secondary.values())
        names.append(spec.secondary.name)
    base = {
        "tau": spec.base.tau, "temp": spec.base.temp, "r": spec.base.r,
        "phi_sq": spec.base.phi_sq, "mu": spec.base.mu,
        "alpha": spec.base.alpha, "phi": spec.base.phi,
    }
    params = dict(base)
    if len(axes) == 1:
        params[names[0]] = axes[0]
    else:
        params[names[0]] = axes[0][:, None]
        params[names[1]] = axes[1][None, :]
    return tuple(axes), params


def scan(spec: ScanSpec) -> ScanResult:
    """Evaluate the target over the grid and locate its maximum.

    Invalid (singular) points are excluded; if every point is invalid an
    :class:`AllInvalidGridError` is raised.  Ties resolve to the earliest
    grid point, scanning the sweep axis first.
    """
    axes, params = _grid_params(spec)
    values, valid = evaluate_target(spec.target, **params)
    values = np.broadcast_to(values, tuple(a.size for a in axes)).copy()
    valid = np.broadcast_to(valid, values.shape).copy()
    if not bool(valid.any()):
        raise AllInvalidGridError(
            f"every grid point is invalid for target {spec.target!r}")
    masked = np.where(valid, values, -np.inf)
    flat_best = int(np.argmax(masked))
    idx = np.unravel_index(flat_best, values.shape)
    argbest = tuple(float(axes[k][idx[k]]) for k in range(len(axes)))
    best = float(values[idx])

    predicted = None
    deviation = None
    if spec.target in PHASE_TARGETS and spec.sweep.name == "phi_sq":
        regime = "small_mu" if spec.base.mu <= 0.5 else "large_mu"
        predicted = predicted_phase(spec.target, regime, spec.base.phi)
        period = math.pi if regime == "small_mu" else TWO_PI
        deviation = min(
            _fold_distance(argbest[0], sol, period) for sol in predicted)
    return ScanResult(spec=spec, axes=axes, values=values, valid=valid,
                      argbest=argbest, best=best,
                      predicted=predicted, deviation=deviation)


@dataclass(frozen=True)
class Table1Row:
    """Verification outcome for one (target, regime, phi) combination."""

    target: str
    regime: str
    mu: float
    phi: float
    argbest: float
    predicted: tuple[float, ...]
    deviation: float
    deviation_steps: float


@dataclass(frozen=True)
class Table1Report:
    """Endpoint verification of all six phase-matching conditions.

    ``rows`` covers the asserted near-endpoint correlations (mu = 0.01
    and 0.99 by default); ``intermediate_rows`` reports mu = 0.5, where
    no condition is claimed, for inspection only.  ``joint_deviations``
    holds the fold-periodic distances between the joint-bound optimum and
    the phase-information optimum, which the verification also requires
    to coincide.
    """

    grid_points: int
    tolerance_steps: float
    rows: list[Table1Row] = field(default_factory=list)
    intermediate_rows: list[Table1Row] = field(default_factory=list)
    joint_deviations: list[float] = field(default_factory=list)

    @property
    def step(self) -> float:
        return TWO_PI / (self.grid_points - 1)

    @property
    def max_deviation_steps(self) -> float:
        return max(row.deviation_steps for row in self.rows)

    @property
    def passed(self) -> bool:
        tol = self.tolerance_steps * self.step
        return (self.max_deviation_steps <= self.tolerance_steps
                and all(d <= tol for d in self.joint_deviations))

    def cell_passed(self, target: str, regime: str) -> bool:
        rows = [r for r in self.rows if r.target == target and r.regime == regime]
        return all(r.deviation_steps <= self.tolerance_steps for r in rows)


def _scan_phase(target: str, mu: float, phi: float, grid_points: int,
                temp: float) -> ScanResult:
    base = PhysicalConfig(tau=1.0, temp=temp, r=1.0, phi_sq=0.0, mu=mu,
                          alpha=math.sqrt(2) / 2, phi=phi)
    return scan(ScanSpec(target=target,
                         sweep=AxisSpec("phi_sq", 0.0, TWO_PI, grid_points),
                         base=base))


def verify_table1(grid_points: int = 721,
                  tolerance_steps: float = 2.0) -> Table1Report:
    """Scan every phase-matched target near both correlation endpoints.

    For each of the six (target, regime) cells the squeezing phase is
    swept on a ``grid_points`` grid for several encoded phases, and the
    located optimum must fall within ``tolerance_steps`` grid steps of
    the predicted solution set.  The joint-bound optimum is additionally
    required to coincide with the phase-information optimum.  Mid-range
    correlation (mu = 0.5) is reported but never asserted.
    """
    if grid_points < 360:
        raise ValueError("grid_points must be at least 360")
    step = TWO_PI / (grid_points - 1)
    report = Table1Report(grid_points=grid_points,
                          tolerance_steps=tolerance_steps)
    for target in PHASE_TARGETS:
        temp = TABLE1_TEMPS[target]
        for regime, mu in (("small_mu", 0.01), ("large_mu", 0.99)):
            period = math.pi if regime == "small_mu" else TWO_PI
            for phi in TABLE1_PHIS:
                res = _scan_phase(target, mu, phi, grid_points, temp)
                report.rows.append(Table1Row(
                    target=target, regime=regime, mu=mu, phi=phi,
                    argbest=res.argbest[0], predicted=res.predicted,
                    deviation=res.deviation,
                    deviation_steps=res.deviation / step))
                if target == "inv_delta_sim":
                    phase_res = _scan_phase("f_phi_imp", mu, phi,
                                            grid_points, TABLE1_TEMPS["f_phi_imp"])
                    report.joint_deviations.append(_fold_distance(
                        res.argbest[0], phase_res.argbest[0], period))
        for phi in TABLE1_PHIS:
            res = _scan_phase(target, 0.5, phi, grid_points, temp)
            pred = predicted_phase(target, "large_mu", phi)
            dev = min(_fold_distance(res.argbest[0], s, TWO_PI) for s in pred)
            report.intermediate_rows.append(Table1Row(
                target=target, regime="mid_mu", mu=0.5, phi=phi,
                argbest=res.argbest[0], predicted=pred, deviation=dev,
                deviation_steps=dev / step))
    return report
