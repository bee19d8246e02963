"""Command-line front end: scenarios, runs, comparisons, validation.

Scenario configs are strict JSON: unknown keys are rejected with a field
path, coefficients must pass the Routh-Hurwitz test, and the growth power
must satisfy n*p < 1. A handful of built-in presets ("example1",
"example2-case1" ... "example2-case6") are loadable by name without a file
and go through the same validation path as files.

Outputs are deterministic: trajectory and switch CSVs with 17-significant-
digit numbers, machine-readable metrics JSON, a human-readable summary, and
a generated matplotlib script per run (this package itself renders nothing).

Exit codes: 0 success, 1 usage/configuration/IO error, 2 divergence.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import math
import os
import random
import sys
from dataclasses import dataclass
from typing import Optional

from . import baselines, engine, linalg, plant as plantmod, speedreg, supervisor

__all__ = [
    "Scenario",
    "ScenarioError",
    "PRESET_NAMES",
    "parse_scenario",
    "cmd_run",
    "cmd_compare",
    "cmd_validate",
    "write_trajectory_csv",
    "write_switches_csv",
    "read_trajectory_csv",
    "read_switches_csv",
    "metrics_from_csv",
    "main",
]

log = logging.getLogger(__name__)


class ScenarioError(ValueError):
    """Configuration problem, annotated with the offending field path."""


@dataclass(frozen=True)
class Scenario:
    """Fully resolved run description."""

    name: str
    plant: plantmod.Plant
    coeffs: linalg.HurwitzCoeffs
    law: baselines.GainLaw
    sim: engine.SimConfig
    x0: tuple
    xhat0: tuple
    plant_spec: dict


# --- preset definitions -------------------------------------------------------

_VARSIGMA = 1.0 / 2.8

_EXAMPLE1 = {
    "name": "example1",
    "plant": {"kind": "example1", "theta": 0.2},
    "coeffs": {"a": [1.2, 1.5, 1.3], "b": [0.4, 1.8, 1.2]},
    "gain": {
        "kind": "lbs",
        "robust": True,
        "r0": 1.3,
        "varsigma": _VARSIGMA,
        "sigma_bar": {"formula": "scaled-index", "c": 6e-5},
        "sigma_under": {"formula": "exp-decay"},
        "mu": {"formula": "piecewise-mu", "first": math.exp(8.0), "rest": math.exp(3.0)},
        "phi": {"kind": "derived", "lambda_min": 0.3197},
    },
    "sim": {"horizon_T": 30.0, "step_h": 1e-3, "record_stride": 1},
    "init": {"x0": [2.0, -2.0, 2.0], "xhat0": [0.0, 0.0, 0.0]},
}


def _example2_preset(case: str) -> dict:
    if case in ("case5", "case6"):
        mu = ({"formula": "constant", "c": math.exp(3.0)} if case == "case5" else
              {"formula": "piecewise-mu", "first": math.exp(8.0), "rest": math.exp(3.0)})
        gain = {
            "kind": "lbs",
            "robust": False,
            "r0": 1.0,
            "varsigma": _VARSIGMA,
            "sigma_bar": {"formula": "linear", "c": 1.0, "d": -0.9},
            "sigma_under": {"formula": "exp-decay"},
            "mu": mu,
            "phi": {"kind": "one"},
        }
    else:
        gain = {"kind": case}
    # static r=80 settles below 0.05 only near t~4470 (slowest mode -0.262/80),
    # so the shared horizon must comfortably exceed that
    return {
        "name": f"example2-{case}",
        "plant": {"kind": "example2", "theta_R": 0.1},
        "coeffs": {"a": [3.0, 3.0, 3.0], "b": [0.3, 0.8, 1.2]},
        "gain": gain,
        "sim": {"horizon_T": 5500.0, "step_h": 0.025, "record_stride": 40},
        "init": {"x0": [2.0, -2.0, 2.0], "xhat0": [0.0, 0.0, 0.0]},
    }


_PRESETS = {"example1": _EXAMPLE1}
for _case in ("case1", "case2", "case3", "case4", "case5", "case6"):
    _PRESETS[f"example2-{_case}"] = _example2_preset(_case)
PRESET_NAMES = tuple(sorted(_PRESETS))


# --- strict dict walking ------------------------------------------------------

def _check_keys(obj: dict, path: str, required: tuple, optional: tuple = ()):
    if not isinstance(obj, dict):
        raise ScenarioError(f"{path}: expected an object")
    unknown = set(obj) - set(required) - set(optional)
    if unknown:
        raise ScenarioError(f"{path}: unknown key '{sorted(unknown)[0]}'")
    for key in required:
        if key not in obj:
            raise ScenarioError(f"{path}: missing required key '{key}'")


def _number(obj, path: str) -> float:
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise ScenarioError(f"{path}: expected a number")
    return float(obj)


def _vector(obj, path: str) -> tuple:
    if not isinstance(obj, list) or not obj:
        raise ScenarioError(f"{path}: expected a non-empty array of numbers")
    return tuple(_number(v, f"{path}[{i}]") for i, v in enumerate(obj))


def _build_plant(spec: dict) -> plantmod.Plant:
    _check_keys(spec, "plant", ("kind",), ("theta", "theta_R", "n", "p"))
    kind = spec.get("kind")
    if kind == "example1":
        _check_keys(spec, "plant", ("kind",), ("theta",))
        return plantmod.make_example1_plant(_number(spec.get("theta", 0.2), "plant.theta"))
    if kind == "example2":
        _check_keys(spec, "plant", ("kind",), ("theta_R",))
        return plantmod.make_example2_plant(_number(spec.get("theta_R", 0.1), "plant.theta_R"))
    if kind == "chain":
        _check_keys(spec, "plant", ("kind", "n"), ("p",))
        n = spec.get("n")
        if not isinstance(n, int) or n < 1:
            raise ScenarioError("plant.n: expected a positive integer")
        return plantmod.make_chain_plant(n, p=_number(spec.get("p", 0.0), "plant.p"))
    raise ScenarioError(f"plant.kind: unknown plant '{kind}' (example1, example2, chain)")


def _build_sequence(spec: dict, path: str):
    _check_keys(spec, path, ("formula",), ("c", "d", "first", "rest"))
    params = {k: _number(v, f"{path}.{k}") for k, v in spec.items() if k != "formula"}
    try:
        return supervisor.make_sequence(spec["formula"], **params)
    except ValueError as exc:
        raise ScenarioError(f"{path}: {exc}") from None


def _build_lbs(gain: dict, plant: plantmod.Plant,
               coeffs: linalg.HurwitzCoeffs) -> baselines.GainLaw:
    _check_keys(gain, "gain", ("kind", "r0", "sigma_bar", "sigma_under", "mu", "phi"),
                ("robust", "varsigma"))
    varsigma = _number(gain.get("varsigma", _VARSIGMA), "gain.varsigma")
    robust = gain.get("robust", False)
    if not isinstance(robust, bool):
        raise ScenarioError("gain.robust: expected true or false")
    phi_spec = gain["phi"]
    _check_keys(phi_spec, "gain.phi", ("kind",), ("lambda_min",))
    if phi_spec["kind"] == "one":
        phi_of_omega = supervisor.make_phi_one()
    elif phi_spec["kind"] == "derived":
        if "lambda_min" in phi_spec:
            lam = _number(phi_spec["lambda_min"], "gain.phi.lambda_min")
        else:
            _, _, xi = linalg.build_closed_loop_matrices(coeffs, coeffs.n)
            lam = linalg.solve_lyapunov(xi).lambda_min
        phi_of_omega = supervisor.make_phi_derived(
            plant.envelope.gamma, plant.envelope.p, max(coeffs.b), lam, varsigma)
    else:
        raise ScenarioError(f"gain.phi.kind: unknown growth function '{phi_spec['kind']}'")
    try:
        seqs = supervisor.SwitchingSequences(
            sigma_bar=_build_sequence(gain["sigma_bar"], "gain.sigma_bar"),
            sigma_under=_build_sequence(gain["sigma_under"], "gain.sigma_under"),
            mu=_build_sequence(gain["mu"], "gain.mu"),
            r0=_number(gain["r0"], "gain.r0"),
            phi_of_omega=phi_of_omega,
            varsigma=varsigma,
        )
    except ValueError as exc:
        raise ScenarioError(f"gain: {exc}") from None
    return baselines.make_lbs_law(seqs, robust=robust)


def _scenario_from_dict(data: dict, default_name: str) -> Scenario:
    _check_keys(data, "scenario", ("plant", "coeffs", "gain", "sim", "init"), ("name",))
    name = data.get("name", default_name)
    if not isinstance(name, str) or not name:
        raise ScenarioError("name: expected a non-empty string")

    built_plant = _build_plant(data["plant"])

    cspec = data["coeffs"]
    _check_keys(cspec, "coeffs", ("a", "b"))
    try:
        coeffs = linalg.HurwitzCoeffs(a=_vector(cspec["a"], "coeffs.a"),
                                      b=_vector(cspec["b"], "coeffs.b"))
    except ValueError as exc:
        raise ScenarioError(f"coeffs: {exc}") from None
    if coeffs.n != built_plant.n:
        raise ScenarioError(f"coeffs: length {coeffs.n} does not match plant dimension "
                            f"{built_plant.n}")

    n_p = built_plant.n * built_plant.envelope.p
    if n_p >= 1.0:
        raise ScenarioError(f"plant.p: n*p = {n_p:g} >= 1 violates the growth-envelope "
                            "range (need p < 1/n)")

    gain = data["gain"]
    if not isinstance(gain, dict) or "kind" not in gain:
        raise ScenarioError("gain: expected an object with a 'kind'")
    kind = gain["kind"]
    if kind in baselines.BASELINE_CASES:
        _check_keys(gain, "gain", ("kind",))
        law = baselines.make_case_law(kind)
    elif kind in ("case5", "case6"):
        _check_keys(gain, "gain", ("kind",))
        law = _build_lbs(_example2_preset(kind)["gain"], built_plant, coeffs)
    elif kind == "lbs":
        law = _build_lbs(gain, built_plant, coeffs)
    else:
        raise ScenarioError(f"gain.kind: unknown gain strategy '{kind}'")

    sspec = data["sim"]
    _check_keys(sspec, "sim", ("horizon_T",),
                ("step_h", "record_stride", "convergence_tol", "gain_cap"))
    stride = sspec.get("record_stride", 1)
    if not isinstance(stride, int) or stride < 1:
        raise ScenarioError("sim.record_stride: expected a positive integer")
    try:
        sim = engine.SimConfig(
            horizon_T=_number(sspec["horizon_T"], "sim.horizon_T"),
            step_h=_number(sspec.get("step_h", 1e-3), "sim.step_h"),
            record_stride=stride,
            convergence_tol=_number(sspec.get("convergence_tol", 0.05),
                                    "sim.convergence_tol"),
            gain_cap=_number(sspec.get("gain_cap", 1e9), "sim.gain_cap"),
        )
    except ValueError as exc:
        raise ScenarioError(f"sim: {exc}") from None

    ispec = data["init"]
    _check_keys(ispec, "init", ("x0",), ("xhat0",))
    x0 = _vector(ispec["x0"], "init.x0")
    if len(x0) != built_plant.n:
        raise ScenarioError(f"init.x0: expected {built_plant.n} components")
    xhat0 = _vector(ispec["xhat0"], "init.xhat0") if "xhat0" in ispec \
        else (0.0,) * built_plant.n
    if len(xhat0) != built_plant.n:
        raise ScenarioError(f"init.xhat0: expected {built_plant.n} components")

    return Scenario(name=name, plant=built_plant, coeffs=coeffs, law=law, sim=sim,
                    x0=x0, xhat0=xhat0, plant_spec=dict(data["plant"]))


def parse_scenario(path_or_preset: str) -> Scenario:
    """Load a scenario from a built-in preset name or a JSON file path."""
    if path_or_preset in _PRESETS:
        return _scenario_from_dict(_PRESETS[path_or_preset], path_or_preset)
    if not os.path.exists(path_or_preset):
        raise ScenarioError(f"'{path_or_preset}' is neither a preset "
                            f"({', '.join(PRESET_NAMES)}) nor an existing file")
    with open(path_or_preset, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"{path_or_preset}:{exc.lineno}: invalid JSON "
                                f"({exc.msg})") from None
    stem = os.path.splitext(os.path.basename(path_or_preset))[0]
    return _scenario_from_dict(data, stem)


# --- CSV and report output ----------------------------------------------------

def _fmt(v: float) -> str:
    return "%.17g" % v


def write_trajectory_csv(path: str, record: engine.TrajectoryRecord):
    n = record.n
    header = (["t"] + [f"x{i}" for i in range(1, n + 1)]
              + [f"xhat{i}" for i in range(1, n + 1)]
              + ["u", "r", "m", "chi", "omega"])
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for k in range(len(record.t)):
            vals = ([_fmt(record.t[k])]
                    + [_fmt(v) for v in record.x[k]]
                    + [_fmt(v) for v in record.xhat[k]]
                    + [_fmt(record.u[k]), _fmt(record.r[k]), "%d" % record.m[k],
                       _fmt(record.chi[k]), _fmt(record.omega[k])])
            fh.write(",".join(vals) + "\n")


def write_switches_csv(path: str, record: engine.TrajectoryRecord):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("m,t_m,r_m\n")
        for ev in record.switches:
            fh.write("%d,%s,%s\n" % (ev.m, _fmt(ev.t_m), _fmt(ev.r_m)))


def read_trajectory_csv(path: str) -> dict:
    """Parse an emitted trajectory CSV back into named float columns."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        rows = [[float(v) for v in line.strip().split(",")] for line in fh if line.strip()]
    cols = {name: [row[i] for row in rows] for i, name in enumerate(header)}
    n = sum(1 for name in header if name.startswith("x") and not name.startswith("xhat"))
    cols["_n"] = n
    return cols


def read_switches_csv(path: str) -> list:
    with open(path, "r", encoding="utf-8") as fh:
        fh.readline()
        out = []
        for line in fh:
            if line.strip():
                m_s, t_s, r_s = line.strip().split(",")
                out.append(engine.SwitchEvent(m=int(m_s), t_m=float(t_s), r_m=float(r_s)))
    return out


def metrics_from_csv(traj_path: str, switches_path: str, tol: float = 0.05,
                     diverged: bool = False) -> engine.RunMetrics:
    """Recompute RunMetrics from emitted CSVs (round-trip check helper)."""
    cols = read_trajectory_csv(traj_path)
    n = cols["_n"]
    x = list(zip(*[cols[f"x{i}"] for i in range(1, n + 1)]))
    xhat = list(zip(*[cols[f"xhat{i}"] for i in range(1, n + 1)]))
    switches = read_switches_csv(switches_path)
    return engine.compute_metrics(cols["t"], x, cols["u"], cols["r"], len(switches),
                                  xhat=xhat, tol=tol, diverged=diverged)


def _metrics_dict(record: engine.TrajectoryRecord) -> dict:
    met = record.metrics
    return {
        "name": record.name,
        "peak_abs_x1": met.peak_abs_x1,
        "convergence_time": met.convergence_time,
        "switch_count": met.switch_count,
        "final_gain": met.final_gain,
        "all_bounded": met.all_bounded,
        "diverged": record.diverged,
        "gain_capped": record.gain_capped,
    }


def _write_metrics(out_dir: str, record: engine.TrajectoryRecord, sim: engine.SimConfig):
    data = _metrics_dict(record)
    data["convergence_tol"] = sim.convergence_tol
    with open(os.path.join(out_dir, f"{record.name}_metrics.json"), "w",
              encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    met = record.metrics
    lines = [
        f"run: {record.name}",
        f"rows recorded: {len(record.t)}",
        f"final time: {_fmt(record.t[-1])}",
        f"peak |x1|: {_fmt(met.peak_abs_x1)}",
        "convergence time: " + ("not-converged" if met.convergence_time is None
                                else _fmt(met.convergence_time)),
        f"switch count: {met.switch_count}",
        f"final gain: {_fmt(met.final_gain)}",
        f"all bounded: {met.all_bounded}",
        f"diverged: {record.diverged}",
        f"gain capped: {record.gain_capped}",
        "switches (m, t_m, r_m):",
    ]
    for ev in record.switches[:40]:
        lines.append(f"  {ev.m}  {_fmt(ev.t_m)}  {_fmt(ev.r_m)}")
    if len(record.switches) > 40:
        lines.append(f"  ... {len(record.switches) - 40} more")
    with open(os.path.join(out_dir, f"{record.name}_summary.txt"), "w",
              encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


_RUN_PLOT = '''"""Generated plot script: states/errors and input/gain staircase."""
import csv

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

NAME = {name!r}
N = {n}

with open(f"{{NAME}}_trajectory.csv") as fh:
    rows = list(csv.DictReader(fh))
t = [float(r["t"]) for r in rows]

fig, axes = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
for i in range(1, N + 1):
    axes[0].plot(t, [float(r[f"x{{i}}"]) for r in rows], label=f"x{{i}}")
    axes[1].plot(t, [float(r[f"x{{i}}"]) - float(r[f"xhat{{i}}"]) for r in rows],
                 label=f"x{{i}} - xhat{{i}}")
axes[0].set_ylabel("states"); axes[0].legend(); axes[0].grid(True)
axes[1].set_ylabel("estimation errors"); axes[1].set_xlabel("t [s]")
axes[1].legend(); axes[1].grid(True)
fig.tight_layout(); fig.savefig(f"{{NAME}}_states.png", dpi=150)

fig, axes = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
axes[0].plot(t, [float(r["u"]) for r in rows])
axes[0].set_ylabel("u"); axes[0].grid(True)
axes[1].plot(t, [float(r["r"]) for r in rows], drawstyle="steps-post")
axes[1].set_ylabel("gain r"); axes[1].set_xlabel("t [s]"); axes[1].grid(True)
fig.tight_layout(); fig.savefig(f"{{NAME}}_input_gain.png", dpi=150)
print(f"wrote {{NAME}}_states.png and {{NAME}}_input_gain.png")
'''

_COMPARE_PLOT = '''"""Generated plot script: output and gain overlays across cases."""
import csv

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

NAMES = {names!r}

fig, axes = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
for name in NAMES:
    with open(f"{{name}}_trajectory.csv") as fh:
        rows = list(csv.DictReader(fh))
    t = [float(r["t"]) for r in rows]
    axes[0].plot(t, [float(r["x1"]) for r in rows], label=name)
    axes[1].plot(t, [float(r["r"]) for r in rows], drawstyle="steps-post", label=name)
axes[0].set_ylabel("x1"); axes[0].legend(); axes[0].grid(True)
axes[1].set_ylabel("gain r"); axes[1].set_xlabel("t [s]")
axes[1].legend(); axes[1].grid(True)
fig.tight_layout(); fig.savefig("compare.png", dpi=150)
print("wrote compare.png")
'''


def _write_run_outputs(out_dir: str, record: engine.TrajectoryRecord,
                       sim: engine.SimConfig):
    write_trajectory_csv(os.path.join(out_dir, f"{record.name}_trajectory.csv"), record)
    write_switches_csv(os.path.join(out_dir, f"{record.name}_switches.csv"), record)
    _write_metrics(out_dir, record, sim)
    with open(os.path.join(out_dir, "plot_run.py"), "w", encoding="utf-8") as fh:
        fh.write(_RUN_PLOT.format(name=record.name, n=record.n))


# --- commands -----------------------------------------------------------------

def _prepare_out_dir(out_dir: str) -> bool:
    try:
        os.makedirs(out_dir, exist_ok=True)
        probe = os.path.join(out_dir, ".write-probe")
        with open(probe, "w") as fh:
            fh.write("")
        os.remove(probe)
        return True
    except OSError as exc:
        print(f"error: cannot write to '{out_dir}': {exc}", file=sys.stderr)
        return False


def _run_record(scn: Scenario, sim: engine.SimConfig) -> engine.TrajectoryRecord:
    return engine.run_scenario(scn.plant, scn.coeffs, scn.law, sim, scn.x0, scn.xhat0,
                               name=scn.name)


def _override_sim(sim: engine.SimConfig, step: Optional[float],
                  horizon: Optional[float]) -> engine.SimConfig:
    if step is not None:
        sim = dataclasses.replace(sim, step_h=step)
    if horizon is not None:
        sim = dataclasses.replace(sim, horizon_T=horizon)
    return sim


def cmd_run(scenario: str, out_dir: str, step: Optional[float] = None,
            horizon: Optional[float] = None) -> int:
    """Run one scenario and write CSVs, metrics, summary, and a plot script."""
    try:
        scn = parse_scenario(scenario)
        sim = _override_sim(scn.sim, step, horizon)
    except (ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if not _prepare_out_dir(out_dir):
        return 1
    record = _run_record(scn, sim)
    _write_run_outputs(out_dir, record, sim)
    met = record.metrics
    print(f"{scn.name}: rows={len(record.t)} switches={met.switch_count} "
          f"final_gain={met.final_gain:.6g} peak|x1|={met.peak_abs_x1:.6g} "
          f"converged="
          + ("never" if met.convergence_time is None else f"{met.convergence_time:.6g}")
          + f" bounded={met.all_bounded}")
    if record.diverged:
        print(f"{scn.name}: DIVERGED; partial record written", file=sys.stderr)
        return 2
    return 0


def cmd_compare(scenarios, out_dir: str, step: Optional[float] = None,
                horizon: Optional[float] = None) -> int:
    """Run several scenarios over the same plant and tabulate the metrics."""
    if len(scenarios) < 2:
        print("error: compare needs at least two scenarios", file=sys.stderr)
        return 1
    try:
        parsed = [parse_scenario(s) for s in scenarios]
    except (ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    first = parsed[0]
    for scn in parsed[1:]:
        if (scn.plant_spec != first.plant_spec or scn.x0 != first.x0
                or scn.xhat0 != first.xhat0):
            print(f"error: scenario '{scn.name}' does not share the plant and "
                  f"initial conditions of '{first.name}'", file=sys.stderr)
            return 1
    if not _prepare_out_dir(out_dir):
        return 1
    records = []
    for scn in parsed:
        sim = _override_sim(scn.sim, step, horizon)
        record = _run_record(scn, sim)
        _write_run_outputs(out_dir, record, sim)
        records.append(record)
    report = engine.compare_runs(records)
    lines = ["case                      peak|x1|      convergence   switches  final gain"]
    for rec_name, met in report.rows():
        conv = "not-converged" if met.convergence_time is None else f"{met.convergence_time:.6g}"
        lines.append(f"{rec_name:<25s} {met.peak_abs_x1:<13.6g} {conv:<13s} "
                     f"{met.switch_count:<9d} {met.final_gain:.6g}")
    lines.append("")
    for (na, nb, metric), rel in sorted(report.orderings.items()):
        lines.append(f"{na} {metric} is {rel} than {nb}")
    text = "\n".join(lines) + "\n"
    with open(os.path.join(out_dir, "report.txt"), "w", encoding="utf-8") as fh:
        fh.write(text)
    payload = {
        "cases": [dict(_metrics_dict(rec)) for rec in records],
        "orderings": {f"{na}|{nb}|{metric}": rel
                      for (na, nb, metric), rel in report.orderings.items()},
    }
    with open(os.path.join(out_dir, "report.json"), "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(os.path.join(out_dir, "plot_compare.py"), "w", encoding="utf-8") as fh:
        fh.write(_COMPARE_PLOT.format(names=[rec.name for rec in records]))
    print(text, end="")
    if any(rec.diverged for rec in records):
        return 2
    return 0


def _validate_checks(scn: Scenario):
    """Yield (check name, passed, detail) tuples for one scenario."""
    yield ("coefficients-hurwitz", True,
           f"a={list(scn.coeffs.a)} b={list(scn.coeffs.b)} both Hurwitz")

    n_p = scn.plant.n * scn.plant.envelope.p
    yield ("growth-power", n_p < 1.0, f"n*p = {n_p:g} < 1")

    rng = random.Random(20240 + scn.plant.n)
    samples = []
    for _ in range(10_000):
        t = rng.uniform(0.0, 10.0)
        x = [rng.uniform(-5.0, 5.0) for _ in range(scn.plant.n)]
        u = rng.uniform(-3.0, 3.0)
        samples.append((t, x, u))
    report = plantmod.envelope_check(scn.plant, samples)
    yield ("envelope-samples", report.ok,
           "10000 random samples obey the growth bound" if report.ok
           else f"violated at {report.violation}")

    grid = [200.0 * k / 2000 for k in range(2001)]
    witness = plantmod.disturbance_witness(scn.plant, grid)
    yield ("disturbance-energy", witness.holds,
           f"running sup {witness.running_sup:.6g} <= bound {witness.omega_star:.6g}")

    if scn.law.kind == "lbs":
        seqs = scn.law.seqs
        ms = range(1, 61)
        sb = [seqs.sigma_bar(m) for m in ms]
        ok_sb = all(v > 0 for v in sb) and all(b > a for a, b in zip(sb, sb[1:]))
        yield ("sigma-bar-increasing", ok_sb,
               "sigma_bar positive and strictly increasing on m=1..60" if ok_sb
               else "sigma_bar not increasing")
        su = [seqs.sigma_under(m) for m in ms]
        ok_su = all(v > 0 for v in su) and all(b < a for a, b in zip(su, su[1:]))
        yield ("sigma-under-decreasing", ok_su,
               "sigma_under positive and strictly decreasing on m=1..60" if ok_su
               else "sigma_under not decreasing")
        mus = [seqs.mu(m) for m in range(1, 11)]
        ok_mu = all(v > 0 for v in mus)
        yield ("mu-positive", ok_mu, f"mu(1..10) positive" if ok_mu else f"mu not positive: {mus}")

        ok_grid = True
        for mu in sorted(set(mus)):
            prev = -1.0
            for k in range(2001):
                t = 50.0 * k / 2000
                val = speedreg.phi(t, mu)
                if val < prev or not speedreg.phi_lower_bound_check(t, mu):
                    ok_grid = False
                    break
                prev = val
        yield ("speed-regulation-grid", ok_grid,
               "phi monotone and t*phi >= t - 0.2785*mu on the grid")

        ws = [10.0 ** (k / 4.0) for k in range(-36, 13)]
        vals = [seqs.phi_of_omega(w) for w in ws]
        ok_phi = all(v > 0 for v in vals) and all(b >= a for a, b in zip(vals, vals[1:]))
        yield ("phi-of-omega-nondecreasing", ok_phi,
               "growth function positive and nondecreasing on the sampled grid")


def cmd_validate(scenario: str) -> int:
    """Run the assumption checks for a scenario; exit 0 iff all pass."""
    try:
        scn = parse_scenario(scenario)
    except (ScenarioError, ValueError) as exc:
        print(f"FAIL scenario-parse: {exc}")
        return 1
    print(f"validating '{scn.name}'")
    all_ok = True
    for name, ok, detail in _validate_checks(scn):
        print(f"{'ok  ' if ok else 'FAIL'} {name}: {detail}")
        all_ok = all_ok and ok
    return 0 if all_ok else 1


# --- argument parsing ---------------------------------------------------------

class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def main(argv=None) -> int:
    logging.basicConfig(
        level=os.environ.get("LBSCTRL_LOG", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s")
    parser = _Parser(prog="lbsctrl",
                     description="Switching-gain output-feedback simulation engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate one scenario")
    p_run.add_argument("scenario", help="preset name or scenario JSON path")
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.add_argument("--h", type=float, default=None, help="integration step override")
    p_run.add_argument("--T", type=float, default=None, help="horizon override")

    p_cmp = sub.add_parser("compare", help="run several scenarios on one plant")
    p_cmp.add_argument("scenarios", nargs="+", help="preset names or JSON paths")
    p_cmp.add_argument("--out", required=True, help="output directory")
    p_cmp.add_argument("--h", type=float, default=None, help="integration step override")
    p_cmp.add_argument("--T", type=float, default=None, help="horizon override")

    p_val = sub.add_parser("validate", help="check scenario assumptions")
    p_val.add_argument("scenario", help="preset name or scenario JSON path")

    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.command == "run":
        return cmd_run(args.scenario, args.out, args.h, args.T)
    if args.command == "compare":
        return cmd_compare(args.scenarios, args.out, args.h, args.T)
    return cmd_validate(args.scenario)


if __name__ == "__main__":
    sys.exit(main())
