"""Room, ceiling access points, receiver grid and disc placement."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import HorizontalDisc, Point3

__all__ = [
    "Room",
    "AccessPoint",
    "ReceiverGrid",
    "DiscObstacle",
    "DEFAULT_AP_POSITIONS",
    "default_room",
    "default_aps",
    "grid_locations",
    "disc_for_receiver",
]

DEFAULT_AP_POSITIONS = (
    (1.0, 1.0, 3.0),
    (1.0, 3.0, 3.0),
    (1.0, 5.0, 3.0),
    (1.0, 7.0, 3.0),
    (3.0, 1.0, 3.0),
    (3.0, 3.0, 3.0),
    (3.0, 5.0, 3.0),
    (3.0, 7.0, 3.0),
)


@dataclass(frozen=True)
class Room:
    width: float = 4.0
    length: float = 8.0
    height: float = 3.0
    cf_height: float = 1.0

    def __post_init__(self):
        for name in ("width", "length", "height", "cf_height"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"room {name} must be finite")
            object.__setattr__(self, name, value)
        if min(self.width, self.length, self.height) <= 0:
            raise ValueError("room width, length and height must be positive")
        if not 0.0 <= self.cf_height < self.height:
            raise ValueError("cf_height must satisfy 0 <= cf_height < height")

    def contains(self, p: Point3) -> bool:
        return (0.0 <= p.x <= self.width and 0.0 <= p.y <= self.length
                and 0.0 <= p.z <= self.height)


@dataclass(frozen=True)
class AccessPoint:
    id: int
    position: Point3

    def __post_init__(self):
        if not isinstance(self.position, Point3):
            object.__setattr__(self, "position", Point3(*self.position))


@dataclass(frozen=True)
class DiscObstacle:
    """Disc of radius ``R`` placed ``h`` above the communication floor and
    ``d`` ahead of the receiver along +y."""

    R: float
    h: float
    d: float

    def __post_init__(self):
        for name in ("R", "h", "d"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"obstacle {name} must be finite")
            object.__setattr__(self, name, value)
        if self.R < 0:
            raise ValueError(f"obstacle radius must be >= 0, got {self.R}")

    def replace(self, **changes) -> "DiscObstacle":
        values = {"R": self.R, "h": self.h, "d": self.d}
        values.update(changes)
        return DiscObstacle(**values)


@dataclass(frozen=True, eq=False)
class ReceiverGrid:
    step: float
    include_boundary: bool
    locations: np.ndarray = field(repr=False)
    shape: tuple = (0, 0)

    def __len__(self) -> int:
        return len(self.locations)

    def __iter__(self):
        for x, y, z in self.locations:
            yield Point3(x, y, z)


def default_room() -> tuple[Room, list[AccessPoint]]:
    return Room(), default_aps()


def default_aps() -> list[AccessPoint]:
    return [AccessPoint(i + 1, Point3(*p)) for i, p in enumerate(DEFAULT_AP_POSITIONS)]


def _divisions(extent: float, step: float, axis: str) -> int:
    n = round(extent / step)
    if n < 1 or not math.isclose(n * step, extent, rel_tol=1e-9, abs_tol=1e-12):
        raise ValueError(f"grid step {step} does not evenly divide room {axis} {extent}")
    return n


def grid_locations(room: Room, step: float = 0.25, include_boundary: bool = True) -> ReceiverGrid:
    """Receiver positions on the communication floor.

    Rows run along x; consecutive rows advance in y. Without the boundary the
    first and last coordinate of each axis are dropped.
    """
    step = float(step)
    if not step > 0:
        raise ValueError(f"grid step must be positive, got {step}")
    nx = _divisions(room.width, step, "width")
    ny = _divisions(room.length, step, "length")
    xs = np.arange(nx + 1) * step
    ys = np.arange(ny + 1) * step
    # pin the far wall exactly so the mirror maps close the set
    xs[-1], ys[-1] = room.width, room.length
    if not include_boundary:
        xs, ys = xs[1:-1], ys[1:-1]
    if xs.size == 0 or ys.size == 0:
        raise ValueError("receiver grid is empty")
    gy, gx = np.meshgrid(ys, xs, indexing="ij")
    locs = np.column_stack([gx.ravel(), gy.ravel(), np.full(gx.size, room.cf_height)])
    locs.setflags(write=False)
    return ReceiverGrid(step, bool(include_boundary), locs, (ys.size, xs.size))


def disc_for_receiver(receiver: Point3, obstacle: DiscObstacle, room: Room) -> HorizontalDisc:
    center = Point3(receiver.x, receiver.y + obstacle.d, room.cf_height + obstacle.h)
    return HorizontalDisc(center, obstacle.R)
