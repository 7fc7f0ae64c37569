"""Brute-force cross-checks for the analytic predicate and the grid metric.

``sampled_blocked`` walks the segment in many small steps and looks for a
sample inside a thin slab around the disc; it shares no code with
:mod:`owblock.geometry` beyond the data types. ``mc_blockage_fraction``
replaces the regular receiver grid with uniformly drawn floor positions.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .engine import blocked_mask
from .geometry import HorizontalDisc, Point3, Segment, segment_blocked_by_disc
from .room import AccessPoint, DiscObstacle, Room

__all__ = [
    "RNG_ALGORITHM",
    "OracleConfig",
    "sampled_blocked",
    "mc_blockage_fraction",
    "boundary_clearance",
    "random_instances",
    "oracle_agreement",
]

RNG_ALGORITHM = "numpy.random.PCG64"


@dataclass(frozen=True)
class OracleConfig:
    samples_per_segment: int = 100_000
    slab_half_thickness: float = 1e-4
    mc_trials: int = 200_000
    rng_seed: int = 0

    def __post_init__(self):
        if int(self.samples_per_segment) < 2:
            raise ValueError("samples_per_segment must be >= 2")
        if not self.slab_half_thickness > 0:
            raise ValueError("slab_half_thickness must be positive")
        if int(self.mc_trials) < 1:
            raise ValueError("mc_trials must be >= 1")
        if not 0 <= int(self.rng_seed) < 2**64:
            raise ValueError("rng_seed must fit in 64 unsigned bits")

    def to_dict(self) -> dict:
        return asdict(self)


def sampled_blocked(seg: Segment, disc: HorizontalDisc, cfg: OracleConfig = OracleConfig()) -> bool:
    s = seg.start.as_array()
    e = seg.end.as_array()
    c = disc.center
    ts = np.linspace(0.0, 1.0, cfg.samples_per_segment)
    z = s[2] + ts * (e[2] - s[2])
    near = np.abs(z - c.z) <= cfg.slab_half_thickness
    if not near.any():
        return False
    tn = ts[near]
    x = s[0] + tn * (e[0] - s[0])
    y = s[1] + tn * (e[1] - s[1])
    return bool(np.any(np.hypot(x - c.x, y - c.y) <= disc.radius))


def mc_blockage_fraction(ap: AccessPoint, room: Room, obstacle: DiscObstacle,
                         cfg: OracleConfig = OracleConfig()) -> float:
    """Blocked fraction of uniformly drawn receiver positions on the floor."""
    rng = np.random.Generator(np.random.PCG64(cfg.rng_seed))
    u = rng.random((cfg.mc_trials, 2))
    locs = np.column_stack([
        u[:, 0] * room.width,
        u[:, 1] * room.length,
        np.full(cfg.mc_trials, room.cf_height),
    ])
    return int(np.count_nonzero(blocked_mask(ap, locs, obstacle, room))) / cfg.mc_trials


def _slab_error(seg: Segment, cfg: OracleConfig) -> float:
    s, e = seg.start, seg.end
    horiz = math.hypot(e.x - s.x, e.y - s.y)
    vert = abs(e.z - s.z)
    if vert == 0.0:
        return math.inf
    spacing = math.dist(tuple(s), tuple(e)) / (cfg.samples_per_segment - 1)
    return cfg.slab_half_thickness * horiz / vert + spacing


def boundary_clearance(seg: Segment, disc: HorizontalDisc) -> float:
    """Distance (m) from the instance to the nearest knife edge of the blocked set.

    Counts the rim of the disc when the plane is crossed, and the gap between
    the disc plane and the segment endpoints' heights.
    """
    s, e, c = seg.start, seg.end, disc.center
    clearance = min(abs(c.z - s.z), abs(c.z - e.z))
    if min(s.z, e.z) <= c.z <= max(s.z, e.z) and s.z != e.z:
        t = (s.z - c.z) / (s.z - e.z)
        x = s.x + t * (e.x - s.x)
        y = s.y + t * (e.y - s.y)
        clearance = min(clearance, abs(math.hypot(x - c.x, y - c.y) - disc.radius))
    return clearance


def random_instances(n: int, seed: int, min_clearance: float = 1e-3,
                     cfg: OracleConfig = OracleConfig()):
    """Seeded LOS-like (segment, disc) pairs away from every knife edge.

    Segments run from a ceiling point (z=3) to a floor-level point (z=1) of a
    4 x 8 m room; discs sit near the segment so hits and misses both occur.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    out = []
    while len(out) < n:
        sx, sy = rng.uniform(0, 4), rng.uniform(0, 8)
        ex, ey = rng.uniform(0, 4), rng.uniform(0, 8)
        if sx == ex and sy == ey:
            continue
        seg = Segment(Point3(sx, sy, 3.0), Point3(ex, ey, 1.0))
        t0 = rng.uniform(-0.15, 1.15)
        cz = 3.0 - 2.0 * t0
        base_x = sx + t0 * (ex - sx)
        base_y = sy + t0 * (ey - sy)
        ang = rng.uniform(0, 2 * math.pi)
        off = rng.uniform(0, 1.5)
        disc = HorizontalDisc(
            Point3(base_x + off * math.cos(ang), base_y + off * math.sin(ang), cz),
            rng.uniform(0, 1.5),
        )
        if boundary_clearance(seg, disc) < max(min_clearance, _slab_error(seg, cfg)):
            continue
        out.append((seg, disc))
    return out


def oracle_agreement(n: int = 10_000, seed: int = 0, cfg: OracleConfig = OracleConfig(),
                     instances: Optional[list] = None) -> dict:
    """Compare the analytic predicate with :func:`sampled_blocked`."""
    if instances is None:
        instances = random_instances(n, seed, cfg=cfg)
    mismatches = 0
    hits = 0
    for seg, disc in instances:
        analytic = segment_blocked_by_disc(seg, disc)
        hits += analytic
        if analytic != sampled_blocked(seg, disc, cfg):
            mismatches += 1
    return {"instances": len(instances), "blocked": hits, "mismatches": mismatches}
