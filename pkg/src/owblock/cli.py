"""Command line: ``owblock sweep`` and ``owblock validate``.

Exit codes: 0 success, 1 I/O failure, 2 usage or configuration error,
3 a validation check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .config import ConfigError, parse_scenario, scenario_from_dict, scenario_to_dict
from .engine import DEFAULT_RANGES, PARAMS, percentage_blockage, sweep
from .oracle import RNG_ALGORITHM, mc_blockage_fraction, oracle_agreement
from .output import curve_records, to_csv, to_json

GRID_MC_TOLERANCE_PP = 2.0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _parse_aps(text: str):
    if text.strip().lower() == "all":
        return "all"
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'all' or a comma list of AP ids: {text!r}")


def _parse_multi_link(text: str):
    try:
        return [[int(i) for i in group.split("+")] for group in text.split(",") if group.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected sets like '1+6,2+5': {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="owblock", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"owblock {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sw = sub.add_parser("sweep", help="percentage blockage curves as CSV or JSON")
    sw.add_argument("--config", type=Path)
    sw.add_argument("--param", choices=PARAMS)
    sw.add_argument("--min", type=float, dest="vmin")
    sw.add_argument("--max", type=float, dest="vmax")
    sw.add_argument("--step", type=float)
    for p in PARAMS:
        sw.add_argument(f"--{p}", type=float, dest=f"fix_{p}")
    sw.add_argument("--grid-step", type=float)
    sw.add_argument("--no-boundary", action="store_true")
    sw.add_argument("--aps", type=_parse_aps)
    sw.add_argument("--multi-link", type=_parse_multi_link)
    sw.add_argument("--out", type=Path)
    sw.add_argument("--format", choices=("csv", "json"), default="csv")
    sw.add_argument("--seed", type=int)
    sw.add_argument("--threads", type=int, help="worker threads (default: $OWB_THREADS)")

    va = sub.add_parser("validate", help="oracle and Monte Carlo consistency report")
    va.add_argument("--config", type=Path)
    va.add_argument("--trials", type=int)
    va.add_argument("--seed", type=int)
    va.add_argument("--instances", type=int, default=10_000,
                    help="random segment/disc pairs for the oracle check")
    va.add_argument("--out", type=Path)
    return parser


def _load_raw(path: Optional[Path]) -> dict:
    if path is None:
        return scenario_to_dict(parse_scenario("{}"))
    text = path.read_text(encoding="utf-8")
    return scenario_to_dict(parse_scenario(text))


def resolve_sweep_config(args, raw: dict):
    """Apply command-line overrides on top of a resolved scenario dict."""
    if args.grid_step is not None:
        raw["grid"]["step"] = args.grid_step
    if args.no_boundary:
        raw["grid"]["include_boundary"] = False
    if args.aps is not None:
        raw["ap_selection"] = args.aps
    if args.multi_link is not None:
        raw["multi_link"] = args.multi_link
    if args.seed is not None:
        raw["oracle"]["rng_seed"] = args.seed

    overrides = {p: getattr(args, f"fix_{p}") for p in PARAMS if getattr(args, f"fix_{p}") is not None}
    raw["obstacle"].update(overrides)

    old = raw.get("sweep")
    if args.param is not None:
        same = old is not None and old["varied"] == args.param
        lo, hi, st = (old["start"], old["stop"], old["step"]) if same else DEFAULT_RANGES[args.param]
        fixed = dict(old["fixed"]) if same else {p: raw["obstacle"][p] for p in PARAMS if p != args.param}
        raw["sweep"] = {"varied": args.param, "start": lo, "stop": hi, "step": st, "fixed": fixed}
    elif any(v is not None for v in (args.vmin, args.vmax, args.step)) and old is None:
        raise ConfigError("--min/--max/--step need --param or a sweep section", "sweep")
    sw = raw.get("sweep")
    if sw is not None:
        if args.vmin is not None:
            sw["start"] = args.vmin
        if args.vmax is not None:
            sw["stop"] = args.vmax
        if args.step is not None:
            sw["step"] = args.step
        for p, v in overrides.items():
            if p != sw["varied"]:
                sw["fixed"][p] = v
    return scenario_from_dict(raw)


def _metadata(cfg, seed) -> dict:
    return {
        "tool": "owblock",
        "version": __version__,
        "config": scenario_to_dict(cfg),
        "seed": seed,
        "rng": RNG_ALGORITHM,
    }


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def run_sweep_command(args) -> int:
    try:
        cfg = resolve_sweep_config(args, _load_raw(args.config))
        specs = cfg.sweep_specs()
        room, grid, aps = cfg.room, cfg.grid(), cfg.access_points()
        curves = [sweep(spec, room, grid, aps, workers=args.threads) for spec in specs]
    except ConfigError as exc:
        print(f"owblock: config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"owblock: {exc}", file=sys.stderr)
        return 1
    records = curve_records(curves)
    if args.format == "csv":
        text = to_csv(records)
    else:
        text = to_json(records, _metadata(cfg, cfg.oracle.rng_seed))
    try:
        _emit(text, args.out)
    except OSError as exc:
        print(f"owblock: cannot write output: {exc}", file=sys.stderr)
        return 1
    return 0


def validation_report(cfg, instances: int = 10_000) -> dict:
    """Run the oracle agreement and grid-versus-Monte-Carlo checks."""
    oc = cfg.oracle
    agreement = oracle_agreement(instances, oc.rng_seed, oc)
    checks = [{
        "name": "geometry_oracle_agreement",
        "status": "pass" if agreement["mismatches"] == 0 else "fail",
        **agreement,
        "max_deviation": agreement["mismatches"],
    }]

    room, grid, obstacle = cfg.room, cfg.grid(), cfg.obstacle
    aps = cfg.access_points()
    if cfg.ap_selection != "all":
        aps = [ap for ap in aps if ap.id in cfg.ap_selection]
    mc_fraction, per_ap = {}, {}
    worst = 0.0
    for ap in aps:
        grid_pct = percentage_blockage(ap, grid, obstacle, room).percentage
        frac = mc_blockage_fraction(ap, room, obstacle, oc)
        dev = abs(grid_pct - 100.0 * frac)
        worst = max(worst, dev)
        mc_fraction[str(ap.id)] = frac
        per_ap[str(ap.id)] = {"grid_percent": grid_pct, "mc_fraction": frac, "deviation_pp": dev}
    checks.append({
        "name": "grid_vs_mc",
        "status": "pass" if worst <= GRID_MC_TOLERANCE_PP else "fail",
        "tolerance_pp": GRID_MC_TOLERANCE_PP,
        "max_deviation": worst,
        "per_ap": per_ap,
    })

    if obstacle.h == 0.0:
        expected = 1.0 if obstacle.R >= obstacle.d else 0.0
        bad = [k for k, v in mc_fraction.items() if v != expected]
        checks.append({
            "name": "h0_dichotomy",
            "status": "fail" if bad else "pass",
            "expected_fraction": expected,
            "max_deviation": max((abs(mc_fraction[k] - expected) for k in mc_fraction), default=0.0),
        })

    report = {
        "tool": "owblock",
        "version": __version__,
        "seed": oc.rng_seed,
        "rng": RNG_ALGORITHM,
        "config": scenario_to_dict(cfg),
        "checks": checks,
        "mc_fraction": mc_fraction,
        "passed": all(c["status"] == "pass" for c in checks),
    }
    for c in checks:
        report[c["name"]] = c["status"]
    return report


def run_validate_command(args) -> int:
    try:
        raw = _load_raw(args.config)
        if args.trials is not None:
            raw["oracle"]["mc_trials"] = args.trials
        if args.seed is not None:
            raw["oracle"]["rng_seed"] = args.seed
        if args.instances < 1:
            raise ConfigError("must be >= 1", "--instances")
        cfg = scenario_from_dict(raw)
    except ConfigError as exc:
        print(f"owblock: config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"owblock: {exc}", file=sys.stderr)
        return 1
    report = validation_report(cfg, args.instances)
    try:
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    except OSError as exc:
        print(f"owblock: cannot write output: {exc}", file=sys.stderr)
        return 1
    return 0 if report["passed"] else 3


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "sweep":
        return run_sweep_command(args)
    return run_validate_command(args)


if __name__ == "__main__":
    sys.exit(main())
