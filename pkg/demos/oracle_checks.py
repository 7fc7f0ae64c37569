"""
Cross-checking the analytic predicate
=====================================

The closed-form test is compared with a brute-force walk along each beam, and
the 561-point grid metric with a Monte Carlo estimate over the continuous floor.
"""

from owblock import DiscObstacle, OracleConfig, default_room, grid_locations, percentage_blockage
from owblock.oracle import mc_blockage_fraction, oracle_agreement

print(oracle_agreement(2000, seed=1))

room, aps = default_room()
grid = grid_locations(room)
cfg = OracleConfig(mc_trials=200_000, rng_seed=3)
for obstacle in (DiscObstacle(0.25, 1, 0.5), DiscObstacle(1.0, 1.0, 2.0), DiscObstacle(1.5, 0.5, 1)):
    print(obstacle)
    for ap in aps[:4]:
        grid_pct = percentage_blockage(ap, grid, obstacle, room).percentage
        mc_pct = 100 * mc_blockage_fraction(ap, room, obstacle, cfg)
        print(f"  AP {ap.id}: grid {grid_pct:6.2f}%   monte carlo {mc_pct:6.2f}%")
