"""Six gain strategies on the same circuit-derived plant.

Cases 1-4 are non-switching baselines: a large constant gain, a bounded
time-varying gain, an unbounded ln(t+6) ramp, and an output-driven
dynamic gain. Cases 5 and 6 use the switching supervisor with constant
and staged switching windows. All six start from x0 = (2, -2, 2) and run
on the shared comparison grid, so the metrics line up row for row.

Full horizon is 5500 s of simulated time (about 20 s wall). Pass --quick
to cut it to 300 s; the switching cases still finish inside that window,
the slow baselines simply report no convergence.
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from lbsctrl import compare_runs, run_scenario
from lbsctrl.cli import parse_scenario

import dataclasses

quick = "--quick" in sys.argv[1:]

records = []
for k in range(1, 7):
    scn = parse_scenario(f"example2-case{k}")
    sim = dataclasses.replace(scn.sim, horizon_T=300.0) if quick else scn.sim
    rec = run_scenario(scn.plant, scn.coeffs, scn.law, sim, scn.x0, scn.xhat0,
                       name=f"case{k}")
    records.append(rec)
    met = rec.metrics
    conv = "never" if met.convergence_time is None else f"{met.convergence_time:8.1f}"
    print(f"case{k}: peak|x1| = {met.peak_abs_x1:10.2f}  settled at {conv} s  "
          f"switches = {met.switch_count}  final r = {met.final_gain:.4f}")

report = compare_runs(records)
print()
print(f"case1 convergence time is "
      f"{report.orderings[('case1', 'case6', 'convergence_time')]} than case6's")
print(f"case1 peak is {report.orderings[('case1', 'case6', 'peak_abs_x1')]} than case6's")

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
for rec in records:
    ax1.plot(rec.t, rec.x[:, 0], label=rec.name, lw=0.9)
    ax2.plot(rec.t, rec.r, lw=0.9)
ax1.set_xlabel("t [s]")
ax1.set_ylabel("x1")
ax1.set_yscale("symlog")
ax1.legend(fontsize=8)
ax1.set_title("output under each strategy")
ax2.set_xlabel("t [s]")
ax2.set_ylabel("gain r")
ax2.set_yscale("log")
ax2.set_title("gain trajectories")

fig.tight_layout()
fig.savefig("circuit_gain_strategies.png", dpi=120)
print("wrote circuit_gain_strategies.png")
