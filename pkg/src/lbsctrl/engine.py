"""Fixed-step simulation of the plant-observer loop under a gain strategy.

A run integrates the augmented state (x, xhat, I_theta, J, r_ode) with
classical RK4 at a fixed step. Under a switching law the gain is frozen
inside every step and the switching condition is evaluated only at step
boundaries: the first boundary where it holds becomes the switching moment,
the supervisor advances there, and the windowed accumulator J restarts.
Rows are recorded at a configurable stride, with switch and final rows
always forced so the recorded m column moves in unit jumps.

The accumulators I_theta and J ride inside the same RK4 state as the plant,
so the monitored signal seen by the switching test is integration-consistent
rather than a post-hoc quadrature.

Divergence is a defined outcome, not an exception: a non-finite state (or an
overflowing derivative evaluation) aborts the run with a final diagnostic
row and a partial record flagged `diverged`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .baselines import GainLaw
from .controller import control_law, observer_deriv, scaled_view
from .linalg import HurwitzCoeffs
from .plant import Plant
from .supervisor import (SupervisorState, apply_switch, chi, make_initial_state,
                         should_switch, theta_bar_integrand)

__all__ = [
    "SimConfig",
    "SwitchEvent",
    "RunMetrics",
    "TrajectoryRecord",
    "ComparisonReport",
    "rk4_step",
    "run_scenario",
    "compute_metrics",
    "compare_runs",
]

# recorded magnitudes above this fail the boundedness verdict
_BOUND_LIMIT = 1e6


@dataclass(frozen=True)
class SimConfig:
    """Integration settings for one run."""

    horizon_T: float
    step_h: float = 1e-3
    record_stride: int = 1
    convergence_tol: float = 0.05
    gain_cap: float = 1e9

    def __post_init__(self):
        if not self.step_h > 0.0 or not self.horizon_T > 0.0:
            raise ValueError("step and horizon must be positive")
        if self.step_h > self.horizon_T:
            raise ValueError("step exceeds horizon")
        if self.record_stride < 1:
            raise ValueError("record_stride must be >= 1")


@dataclass(frozen=True)
class SwitchEvent:
    """One supervisor interval: its index, start time, gain, and (for
    intervals after the first) the monitored value that triggered it."""

    m: int
    t_m: float
    r_m: float
    trigger_chi: Optional[float] = None


@dataclass(frozen=True)
class RunMetrics:
    """Run-level summary; convergence_time is None when never settled."""

    peak_abs_x1: float
    convergence_time: Optional[float]
    switch_count: int
    final_gain: float
    all_bounded: bool


@dataclass
class TrajectoryRecord:
    """Recorded rows, switch log, and metrics of a single run."""

    name: str
    n: int
    t: np.ndarray
    x: np.ndarray
    xhat: np.ndarray
    u: np.ndarray
    r: np.ndarray
    m: np.ndarray
    chi: np.ndarray
    omega: np.ndarray
    I_theta: np.ndarray
    J: np.ndarray
    switches: list
    metrics: RunMetrics
    diverged: bool
    gain_capped: bool
    fingerprint: tuple = field(default=())


def rk4_step(state, t: float, h: float, deriv):
    """One classical Runge-Kutta step of the full augmented state."""
    k1 = deriv(t, state)
    half = 0.5 * h
    s2 = [state[i] + half * k1[i] for i in range(len(state))]
    k2 = deriv(t + half, s2)
    s3 = [state[i] + half * k2[i] for i in range(len(state))]
    k3 = deriv(t + half, s3)
    s4 = [state[i] + h * k3[i] for i in range(len(state))]
    k4 = deriv(t + h, s4)
    sixth = h / 6.0
    return [state[i] + sixth * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i])
            for i in range(len(state))]


def compute_metrics(t, x, u, r, switch_total: int, xhat=None, tol: float = 0.05,
                    diverged: bool = False) -> RunMetrics:
    """Summarize recorded rows; usable both in-run and on re-parsed CSVs.

    convergence_time is the first recorded time from which every later
    recorded infinity-norm of x stays below tol; boundedness requires every
    recorded x, xhat, u, r value finite and under 1e6 in magnitude.
    """
    t = np.asarray(t, dtype=float)
    x = np.atleast_2d(np.asarray(x, dtype=float))
    u = np.asarray(u, dtype=float)
    r = np.asarray(r, dtype=float)
    peak = float(np.abs(x[:, 0]).max())
    cols = [x, u[:, None], r[:, None]]
    if xhat is not None:
        cols.insert(1, np.atleast_2d(np.asarray(xhat, dtype=float)))
    stacked = np.hstack(cols)
    bounded = (not diverged
               and bool(np.isfinite(stacked).all())
               and float(np.abs(stacked).max()) < _BOUND_LIMIT)
    if diverged:
        conv: Optional[float] = None
    else:
        norms = np.abs(x).max(axis=1)
        violating = np.flatnonzero((norms >= tol) | ~np.isfinite(norms))
        if violating.size == 0:
            conv = float(t[0])
        elif violating[-1] == len(t) - 1:
            conv = None
        else:
            conv = float(t[violating[-1] + 1])
    return RunMetrics(peak_abs_x1=peak, convergence_time=conv,
                      switch_count=switch_total - 1, final_gain=float(r[-1]),
                      all_bounded=bounded)


def run_scenario(plant: Plant, coeffs: HurwitzCoeffs, law: GainLaw,
                 config: SimConfig, x0, xhat0=None, name: str = "run"
                 ) -> TrajectoryRecord:
    """Integrate one closed-loop run from t = 0 to the horizon.

    The controller side sees only the measured output, its own observer
    state, and the gain; the plant's envelope shape (gamma, p) is shared
    with the supervisor but the scale theta never is.
    """
    n = plant.n
    if coeffs.n != n:
        raise ValueError("coefficient length does not match plant dimension")
    if len(x0) != n:
        raise ValueError("x0 has wrong dimension")
    xhat0 = [0.0] * n if xhat0 is None else list(xhat0)
    if len(xhat0) != n:
        raise ValueError("xhat0 has wrong dimension")

    a, b = coeffs.a, coeffs.b
    gamma, p = plant.envelope.gamma, plant.envelope.p
    h, steps = config.step_h, int(round(config.horizon_T / config.step_h))
    stride = config.record_stride
    idx_i, idx_j, idx_r = 2 * n, 2 * n + 1, 2 * n + 2

    lbs = law.kind == "lbs"
    sup: Optional[SupervisorState] = None
    if lbs:
        seqs = law.seqs
        sup = make_initial_state(seqs, n, p, law.robust, config.gain_cap)
        r_now = sup.r
        switches = [SwitchEvent(m=1, t_m=0.0, r_m=sup.r)]
    else:
        r_now = law.value(0.0) if law.value is not None else law.r_init
        switches = [SwitchEvent(m=1, t_m=0.0, r_m=r_now)]

    def deriv(t, s):
        if lbs:
            r = r_now
        elif law.value is not None:
            r = law.value(t)
        else:
            r = s[idx_r]
        y = s[0]
        eta, eps1 = scaled_view(y, s[n:2 * n], r)
        u = control_law(eta, b)
        dx = plant.drift(t, s[:n], u)
        dxh = observer_deriv(s[n:2 * n], y, u, r, a)
        if lbs:
            d_i = theta_bar_integrand(y, u, r, gamma, p, seqs.varsigma)
            d_j = eps1 * eps1
            for e in eta:
                d_j += e * e
            dx.extend(dxh)
            dx.extend((d_i, d_j, 0.0))
        else:
            dx.extend(dxh)
            dx.extend((0.0, 0.0,
                       law.deriv(s[idx_r], y, s[n:2 * n]) if law.deriv is not None else 0.0))
        return dx

    rows = []

    def append_row(t, s, r_col, m_col, chi_col, omega_col):
        try:
            eta_r, _ = scaled_view(s[0], s[n:2 * n], max(r_col, 1.0))
            u_row = control_law(eta_r, b)
        except (OverflowError, ValueError):
            u_row = math.nan
        rows.append((t, *s[:2 * n], u_row, r_col, m_col, chi_col, omega_col,
                     s[idx_i], s[idx_j]))

    s = [float(v) for v in x0] + [float(v) for v in xhat0] + [0.0, 0.0, float(law.r_init)]
    diverged = False

    def supervisor_row_values(s):
        eta, eps1 = scaled_view(s[0], s[n:2 * n], sup.r)
        return chi(sup, eta, eps1, seqs, n, p)

    if lbs:
        append_row(0.0, s, sup.r, sup.m, supervisor_row_values(s), sup.omega_m)
    else:
        append_row(0.0, s, r_now, 1, 0.0, 0.0)

    for i in range(1, steps + 1):
        t_prev = (i - 1) * h
        try:
            s_new = rk4_step(s, t_prev, h, deriv)
        except (OverflowError, ValueError):
            diverged = True
            s = [math.nan] * len(s)
            append_row(i * h, s, r_now, sup.m if lbs else 1, math.nan, math.nan)
            break
        t = i * h
        s = s_new
        if not all(math.isfinite(v) for v in s[:2 * n]):
            diverged = True
            append_row(t, s, r_now, sup.m if lbs else 1, math.nan, math.nan)
            break
        forced = False
        if lbs:
            sup.I_theta = s[idx_i]
            sup.J = s[idx_j]
            chi_val = supervisor_row_values(s)
            if t > sup.t_m and should_switch(chi_val, seqs.mu(sup.m), sup.omega_m,
                                             law.robust):
                sup = apply_switch(sup, t, seqs, n, p, config.gain_cap)
                s[idx_j] = 0.0
                sup.J = 0.0
                r_now = sup.r
                switches.append(SwitchEvent(m=sup.m, t_m=t, r_m=sup.r,
                                            trigger_chi=chi_val))
                chi_val = supervisor_row_values(s)
                forced = True
            row_vals = (sup.r, sup.m, chi_val, sup.omega_m)
        else:
            r_now = law.value(t) if law.value is not None else s[idx_r]
            row_vals = (r_now, 1, 0.0, 0.0)
        if forced or i % stride == 0 or i == steps:
            append_row(t, s, *row_vals)

    arr = np.asarray(rows, dtype=float)
    record = TrajectoryRecord(
        name=name, n=n,
        t=arr[:, 0],
        x=arr[:, 1:n + 1],
        xhat=arr[:, n + 1:2 * n + 1],
        u=arr[:, 2 * n + 1],
        r=arr[:, 2 * n + 2],
        m=arr[:, 2 * n + 3].astype(int),
        chi=arr[:, 2 * n + 4],
        omega=arr[:, 2 * n + 5],
        I_theta=arr[:, 2 * n + 6],
        J=arr[:, 2 * n + 7],
        switches=switches,
        metrics=compute_metrics(arr[:, 0], arr[:, 1:n + 1], arr[:, 2 * n + 1],
                                arr[:, 2 * n + 2], len(switches),
                                xhat=arr[:, n + 1:2 * n + 1],
                                tol=config.convergence_tol, diverged=diverged),
        diverged=diverged,
        gain_capped=bool(sup.gain_capped) if lbs else False,
        fingerprint=(plant.name, n, plant.envelope.theta, tuple(float(v) for v in x0),
                     tuple(float(v) for v in xhat0)),
    )
    return record


@dataclass(frozen=True)
class ComparisonReport:
    """Per-case metrics plus pairwise orderings of the comparison metrics."""

    names: tuple
    metrics: tuple
    orderings: dict

    def rows(self):
        return list(zip(self.names, self.metrics))


def _relation(v1, v2) -> str:
    a = math.inf if v1 is None else v1
    b = math.inf if v2 is None else v2
    if a == b:
        return "equal"
    return "smaller" if a < b else "larger"


def compare_runs(records) -> ComparisonReport:
    """Tabulate metrics across runs of the same plant and initial condition.

    orderings[(name_i, name_j, metric)] states how run i compares to run j
    ("smaller" means better for both convergence_time and peak_abs_x1;
    not-converged counts as slower than anything converged).
    """
    records = list(records)
    if len(records) < 2:
        raise ValueError("need at least two runs to compare")
    fp = records[0].fingerprint
    for rec in records[1:]:
        if rec.fingerprint != fp:
            raise ValueError("runs use mismatched plants or initial conditions")
    orderings = {}
    for i, rec_i in enumerate(records):
        for rec_j in records[i + 1:]:
            orderings[(rec_i.name, rec_j.name, "convergence_time")] = _relation(
                rec_i.metrics.convergence_time, rec_j.metrics.convergence_time)
            orderings[(rec_i.name, rec_j.name, "peak_abs_x1")] = _relation(
                rec_i.metrics.peak_abs_x1, rec_j.metrics.peak_abs_x1)
    return ComparisonReport(names=tuple(r.name for r in records),
                            metrics=tuple(r.metrics for r in records),
                            orderings=orderings)
