"""
Protection links
================

A receiver that can fall back to a second access point is only cut off when
both beams are blocked. Compare AP 4 and AP 6 alone against the pair.
"""

import numpy as np

from owblock import SweepSpec, default_room, grid_locations, sweep

room, aps = default_room()
grid = grid_locations(room)

fixed = {"R": 1.5, "h": 0.8}
single = sweep(SweepSpec("d", 0, 4, 0.25, fixed, (4, 6)), room, grid)
paired = sweep(SweepSpec("d", 0, 4, 0.25, fixed, multi_link=((4, 6),)), room, grid)

print("   d   AP4    AP6   AP4+6")
for d, a, b, both in zip(single.spec.values(), single.percentages(4), single.percentages(6),
                         paired.percentages((4, 6))):
    print(f"{d:5.2f} {a:6.2f} {b:6.2f} {both:6.2f}")

assert np.all(paired.percentages((4, 6)) <= np.minimum(single.percentages(4),
                                                       single.percentages(6)))
