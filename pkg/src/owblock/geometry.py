"""Segment versus horizontal-disc intersection.

The blocking rule used throughout the package:

* a segment that pierces the disc plane at an interior parameter ``0 < t < 1``
  is blocked when the crossing lies strictly inside the disc (a beam grazing
  the rim passes);
* a segment whose endpoint sits on the disc plane (``t == 0`` or ``t == 1``)
  is blocked when that endpoint lies on the closed disc, rim included.

Both branches are monotone in the radius. The scalar functions and the
vectorised :func:`segments_blocked_by_discs` perform the same floating-point
operations in the same order, so they agree bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "COPLANAR",
    "Point3",
    "Segment",
    "HorizontalDisc",
    "plane_crossing_parameter",
    "xy_distance",
    "segment_blocked_by_disc",
    "segments_blocked_by_discs",
]


class _Coplanar:
    """Marker returned when a segment lies inside the queried plane."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "COPLANAR"

    def __bool__(self) -> bool:
        return False


COPLANAR = _Coplanar()


@dataclass(frozen=True)
class Point3:
    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"Point3.{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def shifted(self, dx: float = 0.0, dy: float = 0.0, dz: float = 0.0) -> "Point3":
        return Point3(self.x + dx, self.y + dy, self.z + dz)


def _as_point(p) -> Point3:
    return p if isinstance(p, Point3) else Point3(*p)


@dataclass(frozen=True)
class Segment:
    """Line-of-sight segment running from ``start`` (AP) to ``end`` (receiver)."""

    start: Point3
    end: Point3

    def __post_init__(self):
        object.__setattr__(self, "start", _as_point(self.start))
        object.__setattr__(self, "end", _as_point(self.end))
        if self.start == self.end:
            raise ValueError("degenerate segment: start and end coincide")

    def point_at(self, t: float) -> Point3:
        s, e = self.start, self.end
        return Point3(s.x + t * (e.x - s.x), s.y + t * (e.y - s.y), s.z + t * (e.z - s.z))


@dataclass(frozen=True)
class HorizontalDisc:
    """Closed disc in the plane ``z = center.z``."""

    center: Point3
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _as_point(self.center))
        r = float(self.radius)
        if not (r >= 0.0 and math.isfinite(r)):
            raise ValueError(f"disc radius must be finite and >= 0, got {self.radius!r}")
        object.__setattr__(self, "radius", r)


def plane_crossing_parameter(seg: Segment, z_plane: float) -> Union[float, None, _Coplanar]:
    """Parameter ``t`` in ``[0, 1]`` where ``seg`` meets the plane ``z = z_plane``.

    Returns ``None`` when the plane misses the closed segment and
    :data:`COPLANAR` when the segment lies in the plane.
    """
    dz = seg.start.z - seg.end.z
    if dz == 0.0:
        return COPLANAR if z_plane == seg.start.z else None
    t = (seg.start.z - z_plane) / dz
    if 0.0 <= t <= 1.0:
        return t
    return None


def xy_distance(p, q) -> float:
    p, q = _as_point(p), _as_point(q)
    dx = p.x - q.x
    dy = p.y - q.y
    return math.sqrt(dx * dx + dy * dy)


def _coplanar_blocked(seg: Segment, disc: HorizontalDisc) -> bool:
    # closest point of the 2D segment to the disc centre
    s, e, c = seg.start, seg.end, disc.center
    ex = e.x - s.x
    ey = e.y - s.y
    u = ((c.x - s.x) * ex + (c.y - s.y) * ey) / (ex * ex + ey * ey)
    u = min(1.0, max(0.0, u))
    ox = (s.x - c.x) + u * ex
    oy = (s.y - c.y) + u * ey
    return ox * ox + oy * oy <= disc.radius * disc.radius


def segment_blocked_by_disc(seg: Segment, disc: HorizontalDisc) -> bool:
    t = plane_crossing_parameter(seg, disc.center.z)
    if t is COPLANAR:
        return _coplanar_blocked(seg, disc)
    if t is None:
        return False
    s, e, c = seg.start, seg.end, disc.center
    ox = (s.x - c.x) + t * (e.x - s.x)
    oy = (s.y - c.y) + t * (e.y - s.y)
    d2 = ox * ox + oy * oy
    r2 = disc.radius * disc.radius
    if t == 0.0 or t == 1.0:
        return d2 <= r2
    return d2 < r2


def segments_blocked_by_discs(starts, ends, centers, radii) -> np.ndarray:
    """Vectorised :func:`segment_blocked_by_disc`.

    ``starts``, ``ends`` and ``centers`` are ``(..., 3)`` arrays and ``radii``
    is broadcastable against their leading shape. Endpoints must differ.
    """
    s = np.asarray(starts, dtype=float)
    e = np.asarray(ends, dtype=float)
    c = np.asarray(centers, dtype=float)
    r = np.asarray(radii, dtype=float)
    s, e, c = np.broadcast_arrays(s, e, c)
    sx, sy, sz = s[..., 0], s[..., 1], s[..., 2]
    ex, ey, ez = e[..., 0], e[..., 1], e[..., 2]
    cx, cy, cz = c[..., 0], c[..., 1], c[..., 2]
    r2 = r * r

    dz = sz - ez
    flat = dz == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (sz - cz) / np.where(flat, 1.0, dz)
    crossing = ~flat & (t >= 0.0) & (t <= 1.0)

    ox = (sx - cx) + t * (ex - sx)
    oy = (sy - cy) + t * (ey - sy)
    d2 = ox * ox + oy * oy
    at_end = (t == 0.0) | (t == 1.0)
    hit = crossing & np.where(at_end, d2 <= r2, d2 < r2)

    coplanar = flat & (cz == sz)
    if np.any(coplanar):
        lx = ex - sx
        ly = ey - sy
        with np.errstate(divide="ignore", invalid="ignore"):
            u = ((cx - sx) * lx + (cy - sy) * ly) / (lx * lx + ly * ly)
        u = np.minimum(1.0, np.maximum(0.0, u))
        px = (sx - cx) + u * lx
        py = (sy - cy) + u * ly
        hit = hit | (coplanar & (px * px + py * py <= r2))
    return hit
