"""Percentage blockage over the receiver grid and one-parameter sweeps."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .geometry import Point3, Segment, segment_blocked_by_disc, segments_blocked_by_discs
from .room import AccessPoint, DiscObstacle, ReceiverGrid, Room, default_aps, disc_for_receiver

__all__ = [
    "PARAMS",
    "DEFAULT_RANGES",
    "BlockageSample",
    "SweepSpec",
    "BlockageCurve",
    "is_blocked",
    "blocked_mask",
    "percentage_blockage",
    "multi_link_blocked",
    "multi_link_mask",
    "sweep",
    "default_sweeps",
    "resolve_workers",
]

PARAMS = ("R", "h", "d")

# (start, stop, step) per obstacle parameter
DEFAULT_RANGES = {
    "R": (0.0, 2.0, 0.05),
    "h": (0.0, 2.0, 0.05),
    "d": (0.0, 4.0, 0.05),
}

ApLabel = Union[int, tuple]


def ap_label(ap: ApLabel) -> str:
    if isinstance(ap, tuple):
        return "+".join(str(i) for i in ap)
    return str(ap)


@dataclass(frozen=True)
class BlockageSample:
    parameter_value: Optional[float]
    ap_id: ApLabel
    blocked_count: int
    total_count: int

    def __post_init__(self):
        if self.total_count <= 0:
            raise ValueError("total_count must be positive")
        if not 0 <= self.blocked_count <= self.total_count:
            raise ValueError("blocked_count out of range")

    @property
    def fraction(self) -> float:
        return self.blocked_count / self.total_count

    @property
    def percentage(self) -> float:
        return 100.0 * self.blocked_count / self.total_count

    @property
    def label(self) -> str:
        return ap_label(self.ap_id)


@dataclass(frozen=True)
class SweepSpec:
    """One obstacle parameter varied over ``start, start+step, ... <= stop``.

    ``fixed`` holds the two remaining parameters. ``ap_selection`` is
    ``"all"`` or a sequence of AP ids; when ``multi_link`` is given, each
    entry is a set of AP ids evaluated as one protected receiver.
    """

    varied: str
    start: float
    stop: float
    step: float
    fixed: dict = field(default_factory=dict)
    ap_selection: Union[str, tuple] = "all"
    multi_link: Optional[tuple] = None

    def __post_init__(self):
        if self.varied not in PARAMS:
            raise ValueError(f"varied must be one of {PARAMS}, got {self.varied!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("sweep bounds must be finite")
        if self.start > self.stop:
            raise ValueError("sweep start must not exceed stop")
        if not self.step > 0:
            raise ValueError("sweep step must be positive")
        expected = set(PARAMS) - {self.varied}
        if set(self.fixed) != expected:
            raise ValueError(f"fixed must give exactly {sorted(expected)}, got {sorted(self.fixed)}")
        object.__setattr__(self, "fixed", {k: float(self.fixed[k]) for k in PARAMS if k in expected})
        if self.ap_selection != "all":
            ids = tuple(int(i) for i in self.ap_selection)
            if not ids:
                raise ValueError("ap_selection must not be empty")
            object.__setattr__(self, "ap_selection", ids)
        if self.multi_link is not None:
            sets = tuple(tuple(int(i) for i in s) for s in self.multi_link)
            if not sets or any(not s for s in sets):
                raise ValueError("multi_link sets must be non-empty")
            object.__setattr__(self, "multi_link", sets)

    def values(self) -> list[float]:
        n = math.floor((self.stop - self.start) / self.step + 1e-9)
        # rounding keeps lattice points equal to their decimal spelling
        return [round(self.start + i * self.step, 10) for i in range(n + 1)]

    def obstacle_at(self, value: float) -> DiscObstacle:
        return DiscObstacle(**{self.varied: value, **self.fixed})


@dataclass(frozen=True)
class BlockageCurve:
    spec: SweepSpec
    samples: list

    def curve(self, ap: ApLabel) -> list[BlockageSample]:
        return [s for s in self.samples if s.ap_id == ap]

    def percentages(self, ap: ApLabel) -> np.ndarray:
        return np.array([s.percentage for s in self.curve(ap)])

    def labels(self) -> list:
        seen = []
        for s in self.samples:
            if s.ap_id not in seen:
                seen.append(s.ap_id)
        return seen


def is_blocked(ap: AccessPoint, receiver: Point3, obstacle: DiscObstacle, room: Room) -> bool:
    disc = disc_for_receiver(receiver, obstacle, room)
    return segment_blocked_by_disc(Segment(ap.position, receiver), disc)


def _locations(grid) -> np.ndarray:
    if isinstance(grid, ReceiverGrid):
        return grid.locations
    return np.asarray(grid, dtype=float).reshape(-1, 3)


def blocked_mask(ap: AccessPoint, grid, obstacle: DiscObstacle, room: Room) -> np.ndarray:
    """:func:`is_blocked` evaluated at every receiver location of ``grid``."""
    locs = _locations(grid)
    centers = np.column_stack([
        locs[:, 0],
        locs[:, 1] + obstacle.d,
        np.full(len(locs), room.cf_height + obstacle.h),
    ])
    return segments_blocked_by_discs(ap.position.as_array(), locs, centers, obstacle.R)


def percentage_blockage(ap: AccessPoint, grid, obstacle: DiscObstacle, room: Room,
                        parameter_value: Optional[float] = None) -> BlockageSample:
    locs = _locations(grid)
    if len(locs) == 0:
        raise ValueError("receiver grid is empty")
    blocked = int(np.count_nonzero(blocked_mask(ap, locs, obstacle, room)))
    return BlockageSample(parameter_value, ap.id, blocked, len(locs))


def multi_link_blocked(aps: Iterable[AccessPoint], receiver: Point3,
                       obstacle: DiscObstacle, room: Room) -> bool:
    """A receiver served by several APs is blocked only if every link is."""
    aps = list(aps)
    if not aps:
        raise ValueError("multi-link AP set must not be empty")
    return all(is_blocked(ap, receiver, obstacle, room) for ap in aps)


def multi_link_mask(aps: Iterable[AccessPoint], grid, obstacle: DiscObstacle,
                    room: Room) -> np.ndarray:
    aps = list(aps)
    if not aps:
        raise ValueError("multi-link AP set must not be empty")
    locs = _locations(grid)
    mask = np.ones(len(locs), dtype=bool)
    for ap in aps:
        mask &= blocked_mask(ap, locs, obstacle, room)
    return mask


def resolve_workers(workers: Optional[int] = None) -> int:
    if workers is None:
        env = os.environ.get("OWB_THREADS")
        if env:
            try:
                workers = int(env)
            except ValueError:
                raise ValueError(f"OWB_THREADS must be an integer, got {env!r}") from None
        else:
            workers = min(8, os.cpu_count() or 1)
    return max(1, int(workers))


def _select(aps: Sequence[AccessPoint], ids) -> list[AccessPoint]:
    by_id = {ap.id: ap for ap in aps}
    missing = [i for i in ids if i not in by_id]
    if missing:
        raise ValueError(f"unknown AP id(s): {missing}")
    return [by_id[i] for i in ids]


def sweep(spec: SweepSpec, room: Room, grid: ReceiverGrid,
          aps: Optional[Sequence[AccessPoint]] = None,
          workers: Optional[int] = None) -> BlockageCurve:
    """Blockage samples for every lattice value and AP (or AP set).

    Samples come out parameter-major, AP-minor. Work is split across threads
    per parameter value; each value's counts are integers, so the result does
    not depend on the thread count.
    """
    aps = default_aps() if aps is None else list(aps)
    locs = _locations(grid)
    if len(locs) == 0:
        raise ValueError("receiver grid is empty")
    total = len(locs)

    if spec.multi_link is not None:
        groups = [(ids, _select(aps, ids)) for ids in spec.multi_link]
    else:
        ids = [ap.id for ap in aps] if spec.ap_selection == "all" else spec.ap_selection
        groups = [(ap.id, [ap]) for ap in _select(aps, ids)]

    def one_value(value: float) -> list[BlockageSample]:
        obstacle = spec.obstacle_at(value)
        out = []
        for label, members in groups:
            mask = multi_link_mask(members, locs, obstacle, room)
            out.append(BlockageSample(value, label, int(np.count_nonzero(mask)), total))
        return out

    values = spec.values()
    n_workers = min(resolve_workers(workers), len(values))
    if n_workers <= 1:
        chunks = [one_value(v) for v in values]
    else:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            chunks = list(pool.map(one_value, values))
    return BlockageCurve(spec, [s for chunk in chunks for s in chunk])


def default_sweeps(ap_selection="all", multi_link=None) -> list[SweepSpec]:
    """Nine panels: each parameter varied over its default range with the
    other two held at their range minimum, midpoint and maximum."""
    specs = []
    for varied in PARAMS:
        start, stop, step = DEFAULT_RANGES[varied]
        others = [p for p in PARAMS if p != varied]
        for level in ("min", "mid", "max"):
            fixed = {}
            for p in others:
                lo, hi, _ = DEFAULT_RANGES[p]
                fixed[p] = {"min": lo, "mid": (lo + hi) / 2, "max": hi}[level]
            specs.append(SweepSpec(varied, start, stop, step, fixed, ap_selection, multi_link))
    return specs
