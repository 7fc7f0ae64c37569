"""JSON scenario files: parsing, validation and serialisation.

A scenario is a single JSON object. Every section is optional::

    {
      "room": {"width": 4, "length": 8, "height": 3, "cf_height": 1},
      "aps": [[1, 1, 3], [1, 3, 3], ...],
      "grid": {"step": 0.25, "include_boundary": true},
      "obstacle": {"R": 1.0, "h": 1.0, "d": 2.0},
      "sweep": {"varied": "h", "start": 0, "stop": 2.5, "step": 0.05,
                "fixed": {"R": 0.3, "d": 0.5}},
      "ap_selection": "all",
      "multi_link": [[4, 6]],
      "oracle": {"samples_per_segment": 100000, "slab_half_thickness": 0.0001,
                 "mc_trials": 200000, "rng_seed": 0}
    }

``sweep: null`` (the default) means the nine default panels.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Optional, Union

from .engine import DEFAULT_RANGES, PARAMS, SweepSpec, default_sweeps
from .geometry import Point3
from .oracle import OracleConfig
from .room import DEFAULT_AP_POSITIONS, AccessPoint, DiscObstacle, Room, grid_locations

__all__ = [
    "ConfigError",
    "SweepSettings",
    "ScenarioConfig",
    "DEFAULT_OBSTACLE",
    "parse_scenario",
    "scenario_from_dict",
    "scenario_to_dict",
    "dump_scenario",
]

# midpoints of the default sweep ranges
DEFAULT_OBSTACLE = DiscObstacle(R=1.0, h=1.0, d=2.0)


class ConfigError(ValueError):
    """Invalid scenario. ``path`` names the offending field."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


@dataclass(frozen=True)
class SweepSettings:
    varied: str
    start: float
    stop: float
    step: float
    fixed: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ScenarioConfig:
    room: Room = Room()
    aps: tuple = DEFAULT_AP_POSITIONS
    grid_step: float = 0.25
    include_boundary: bool = True
    obstacle: DiscObstacle = DEFAULT_OBSTACLE
    sweep: Optional[SweepSettings] = None
    ap_selection: Union[str, tuple] = "all"
    multi_link: Optional[tuple] = None
    oracle: OracleConfig = OracleConfig()

    def access_points(self) -> list[AccessPoint]:
        return [AccessPoint(i + 1, Point3(*p)) for i, p in enumerate(self.aps)]

    def grid(self):
        return grid_locations(self.room, self.grid_step, self.include_boundary)

    def sweep_specs(self) -> list[SweepSpec]:
        if self.sweep is None:
            return default_sweeps(self.ap_selection, self.multi_link)
        s = self.sweep
        return [SweepSpec(s.varied, s.start, s.stop, s.step, dict(s.fixed),
                          self.ap_selection, self.multi_link)]


def _check_keys(obj: Any, allowed: set, path: str) -> dict:
    if not isinstance(obj, dict):
        raise ConfigError("expected an object", path)
    for key in obj:
        if key not in allowed:
            raise ConfigError("unknown key", f"{path}.{key}" if path else key)
    return obj


def _number(obj: dict, key: str, path: str, default=None) -> float:
    where = f"{path}.{key}" if path else key
    if key not in obj:
        if default is None:
            raise ConfigError("required field missing", where)
        return float(default)
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", where)
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError("must be finite", where)
    return value


def _integer(obj: dict, key: str, path: str, default: int) -> int:
    where = f"{path}.{key}"
    value = obj.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {value!r}", where)
    return value


def _ap_ids(value: Any, path: str, n_aps: int) -> tuple:
    if isinstance(value, bool) or not isinstance(value, list) or not value:
        raise ConfigError("expected a non-empty list of AP ids", path)
    out = []
    for i, item in enumerate(value):
        if isinstance(item, bool) or not isinstance(item, int) or not 1 <= item <= n_aps:
            raise ConfigError(f"AP id must be an integer in 1..{n_aps}", f"{path}[{i}]")
        out.append(item)
    return tuple(out)


def scenario_from_dict(doc: Any) -> ScenarioConfig:
    doc = _check_keys(doc, {"room", "aps", "grid", "obstacle", "sweep", "ap_selection",
                            "multi_link", "oracle"}, "")

    r = _check_keys(doc.get("room", {}), {"width", "length", "height", "cf_height"}, "room")
    base = Room()
    try:
        room = Room(*(_number(r, k, "room", getattr(base, k))
                      for k in ("width", "length", "height", "cf_height")))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc), "room") from None

    raw_aps = doc.get("aps", [list(p) for p in DEFAULT_AP_POSITIONS])
    if not isinstance(raw_aps, list) or not raw_aps:
        raise ConfigError("expected a non-empty list of [x, y, z]", "aps")
    aps = []
    for i, p in enumerate(raw_aps):
        where = f"aps[{i}]"
        if not isinstance(p, list) or len(p) != 3:
            raise ConfigError("expected [x, y, z]", where)
        coords = tuple(_number(dict(zip("xyz", p)), k, where) for k in "xyz")
        point = Point3(*coords)
        if not room.contains(point):
            raise ConfigError(f"AP at {list(coords)} lies outside the room", where)
        if point.z <= room.cf_height:
            raise ConfigError("AP must be above the communication floor", where)
        aps.append(coords)

    g = _check_keys(doc.get("grid", {}), {"step", "include_boundary"}, "grid")
    step = _number(g, "step", "grid", 0.25)
    include = g.get("include_boundary", True)
    if not isinstance(include, bool):
        raise ConfigError("expected true or false", "grid.include_boundary")
    try:
        grid_locations(room, step, include)
    except ValueError as exc:
        raise ConfigError(str(exc), "grid.step") from None

    o = _check_keys(doc.get("obstacle", {}), set(PARAMS), "obstacle")
    values = {k: _number(o, k, "obstacle", getattr(DEFAULT_OBSTACLE, k)) for k in PARAMS}
    if values["R"] < 0:
        raise ConfigError("radius must be >= 0", "obstacle.R")
    obstacle = DiscObstacle(**values)

    sweep = None
    s = doc.get("sweep")
    if s is not None:
        s = _check_keys(s, {"varied", "start", "stop", "step", "fixed"}, "sweep")
        varied = s.get("varied")
        if varied not in PARAMS:
            raise ConfigError(f"expected one of {list(PARAMS)}, got {varied!r}", "sweep.varied")
        lo, hi, st = DEFAULT_RANGES[varied]
        start = _number(s, "start", "sweep", lo)
        stop = _number(s, "stop", "sweep", hi)
        sstep = _number(s, "step", "sweep", st)
        if start > stop:
            raise ConfigError("start must not exceed stop", "sweep.start")
        if sstep <= 0:
            raise ConfigError("must be positive", "sweep.step")
        others = [p for p in PARAMS if p != varied]
        f = _check_keys(s.get("fixed", {}), set(others), "sweep.fixed")
        fixed = {p: _number(f, p, "sweep.fixed", getattr(obstacle, p)) for p in others}
        if fixed.get("R", 0.0) < 0:
            raise ConfigError("radius must be >= 0", "sweep.fixed.R")
        if varied == "R" and start < 0:
            raise ConfigError("radius must be >= 0", "sweep.start")
        sweep = SweepSettings(varied, start, stop, sstep, fixed)

    sel = doc.get("ap_selection", "all")
    if sel != "all":
        sel = _ap_ids(sel, "ap_selection", len(aps))

    ml = doc.get("multi_link")
    if ml is not None:
        if not isinstance(ml, list) or not ml:
            raise ConfigError("expected a non-empty list of AP id lists", "multi_link")
        ml = tuple(_ap_ids(item, f"multi_link[{i}]", len(aps)) for i, item in enumerate(ml))

    oc = _check_keys(doc.get("oracle", {}), {"samples_per_segment", "slab_half_thickness",
                                             "mc_trials", "rng_seed"}, "oracle")
    base_oc = OracleConfig()
    oracle_values = {
        "samples_per_segment": _integer(oc, "samples_per_segment", "oracle",
                                        base_oc.samples_per_segment),
        "slab_half_thickness": _number(oc, "slab_half_thickness", "oracle",
                                       base_oc.slab_half_thickness),
        "mc_trials": _integer(oc, "mc_trials", "oracle", base_oc.mc_trials),
        "rng_seed": _integer(oc, "rng_seed", "oracle", base_oc.rng_seed),
    }
    try:
        oracle = OracleConfig(**oracle_values)
    except ValueError as exc:
        raise ConfigError(str(exc), "oracle") from None

    return ScenarioConfig(room, tuple(aps), step, include, obstacle, sweep, sel, ml, oracle)


def parse_scenario(text: str) -> ScenarioConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"JSON syntax error at line {exc.lineno}, column {exc.colno}: "
                          f"{exc.msg}") from None
    return scenario_from_dict(doc)


def scenario_to_dict(cfg: ScenarioConfig) -> dict:
    room = cfg.room
    doc = {
        "room": {"width": room.width, "length": room.length, "height": room.height,
                 "cf_height": room.cf_height},
        "aps": [list(p) for p in cfg.aps],
        "grid": {"step": cfg.grid_step, "include_boundary": cfg.include_boundary},
        "obstacle": {"R": cfg.obstacle.R, "h": cfg.obstacle.h, "d": cfg.obstacle.d},
        "sweep": None,
        "ap_selection": cfg.ap_selection if cfg.ap_selection == "all" else list(cfg.ap_selection),
        "multi_link": None if cfg.multi_link is None else [list(s) for s in cfg.multi_link],
        "oracle": cfg.oracle.to_dict(),
    }
    if cfg.sweep is not None:
        s = cfg.sweep
        doc["sweep"] = {"varied": s.varied, "start": s.start, "stop": s.stop, "step": s.step,
                        "fixed": dict(s.fixed)}
    return doc


def dump_scenario(cfg: ScenarioConfig) -> str:
    return json.dumps(scenario_to_dict(cfg), indent=2)
