"""Shape of the speed-regulating function phi(t, mu) = tanh(t/mu).

Large mu flattens phi near the origin, which is what delays switching
early in a dwell interval; the product t*phi(t,mu) still tracks t up to
an offset of at most 0.2785*mu, so thresholds are only postponed, never
lost. The script plots both facts and prints the worst observed slack.
"""

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from lbsctrl import phi

mus = [0.1, 1.0, math.exp(3.0), math.exp(8.0)]

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))

for mu in mus:
    ts = np.linspace(0.0, 25.0 * mu, 800)
    ax1.plot(ts / mu, [phi(float(t), mu) for t in ts], label=f"mu = {mu:g}")
ax1.set_xlabel("t / mu")
ax1.set_ylabel("phi(t, mu)")
ax1.set_title("saturation profile (collapses under t/mu)")
ax1.legend()

# lower bound t*phi >= t - 0.2785*mu, tight near t ~ mu
mu = 1.0
ts = np.linspace(0.0, 6.0, 600)
prod = np.array([t * phi(float(t), mu) for t in ts])
ax2.plot(ts, prod, label="t * phi(t, 1)")
ax2.plot(ts, ts - 0.2785 * mu, "--", label="t - 0.2785")
ax2.set_xlabel("t")
ax2.set_title("threshold delay is bounded")
ax2.legend()

worst = math.inf
for mu in mus:
    for t in np.linspace(0.0, 30.0 * mu, 20_000):
        slack = t * phi(float(t), mu) - (t - 0.2785 * mu)
        worst = min(worst, slack / mu)
print(f"worst slack of the bound, scaled by mu: {worst:.3e} (never negative)")

fig.tight_layout()
fig.savefig("speed_regulating_function.png", dpi=120)
print("wrote speed_regulating_function.png")
