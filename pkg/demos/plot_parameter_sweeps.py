"""
Blockage curves for each disc parameter
=======================================

One parameter is swept while the other two are held at the minimum, midpoint
and maximum of their default ranges. Every access point gets its own curve.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from owblock import default_room, default_sweeps, grid_locations, sweep

room, aps = default_room()
grid = grid_locations(room)

fig, axes = plt.subplots(3, 3, figsize=(12, 10), sharey=True)
for ax, spec in zip(axes.ravel(), default_sweeps()):
    curve = sweep(spec, room, grid)
    values = spec.values()
    for ap in aps:
        ax.plot(values, curve.percentages(ap.id), label=f"AP {ap.id}")
    fixed = ", ".join(f"{k}={v:g}" for k, v in spec.fixed.items())
    ax.set_title(f"vary {spec.varied} ({fixed})", fontsize=10)
    ax.set_xlabel(f"{spec.varied} (m)")
axes[0, 0].legend(fontsize=7, ncol=2)
for row in axes:
    row[0].set_ylabel("blocked locations (%)")
fig.tight_layout()
fig.savefig("parameter_sweeps.png", dpi=110)

# %%
# Height at a fixed radius: with R < d the curve starts and ends at zero;
# with R >= d the receiver sits under the disc at h = 0 and starts at 100%.
from owblock import SweepSpec

for R in (0.3, 0.8):
    curve = sweep(SweepSpec("h", 0, 2.5, 0.25, {"R": R, "d": 0.5}, (1,)), room, grid)
    print(f"R={R}:", " ".join(f"{p:6.2f}" for p in curve.percentages(1)))
