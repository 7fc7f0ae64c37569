"""
Which receivers lose their line of sight?
=========================================

One access point, one disc obstacle, every receiver on the 25 cm floor grid.
The map shows blocked receivers for AP 1 and AP 4 with the same obstacle.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from owblock import DiscObstacle, blocked_mask, default_room, grid_locations, percentage_blockage

room, aps = default_room()
grid = grid_locations(room)

# a disc 0.5 m wide, 1 m above the desk plane, 0.5 m ahead of the receiver
obstacle = DiscObstacle(R=0.5, h=1.0, d=0.5)

fig, axes = plt.subplots(1, 2, figsize=(8, 7), sharey=True)
for ax, ap in zip(axes, (aps[0], aps[3])):
    mask = blocked_mask(ap, grid, obstacle, room).reshape(grid.shape)
    ax.imshow(mask, origin="lower", extent=(0, room.width, 0, room.length), cmap="Greys",
              vmin=0, vmax=1.5)
    for other in aps:
        ax.plot(other.position.x, other.position.y, "o", color="0.7")
    ax.plot(ap.position.x, ap.position.y, "r*", ms=14)
    pct = percentage_blockage(ap, grid, obstacle, room).percentage
    ax.set_title(f"AP {ap.id}: {pct:.2f}% blocked")
    ax.set_xlabel("x (m)")
axes[0].set_ylabel("y (m)")

# The blocked patch sits on the far side of the AP: the beam crosses the disc
# plane halfway down, so receivers about 2d behind the AP (in y) are shadowed.
for ap in aps:
    s = percentage_blockage(ap, grid, obstacle, room)
    print(f"AP {ap.id} at {tuple(ap.position)}: {s.blocked_count:3d}/{s.total_count} blocked")

fig.savefig("blockage_map.png", dpi=120, bbox_inches="tight")
