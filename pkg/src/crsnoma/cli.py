"""Command-line interface.

Subcommands:
  sweep      evaluate the grid and write a CSV/JSON table (optionally figures)
  crossover  report the NOMA-over-OMA crossover budget per antenna config
  validate   run the analytic-vs-Monte-Carlo agreement suite

Configuration comes from a YAML file (--config) or the bundled default
scenario (--paper-defaults); individual flags override config fields.
"""

from __future__ import annotations

import argparse
import sys

import yaml

from .montecarlo import SimConfig, _mc_rates, mc_outage
from .outage import make_targets, outage_s1, outage_s2
from .closed_form import sum_rate
from .sweep import (
    ConfigError,
    SweepSpec,
    db_to_linear,
    emit,
    find_crossover,
    paper_scenario,
    run_sweep,
    spec_from_config,
)


def _load_spec(args) -> SweepSpec:
    if args.config:
        with open(args.config) as handle:
            config = yaml.safe_load(handle)
        if not isinstance(config, dict):
            raise ConfigError("config", f"{args.config} does not contain a mapping")
        spec = spec_from_config(config)
    elif args.paper_defaults:
        spec = paper_scenario()
    else:
        raise ConfigError("config", "provide --config PATH or --paper-defaults")

    sim = spec.sim
    if args.seed is not None or args.samples is not None:
        sim = SimConfig(
            n_samples=args.samples if args.samples is not None else sim.n_samples,
            seed=args.seed if args.seed is not None else sim.seed,
            chunk_size=sim.chunk_size,
        )
        spec = SweepSpec(profile=spec.profile, split=spec.split,
                         antenna_list=spec.antenna_list, r1=spec.r1, r2=spec.r2,
                         q_grid_db=spec.q_grid_db, sim=sim, outputs=spec.outputs)
    return spec


def _add_common(parser):
    parser.add_argument("--config", help="YAML sweep configuration file")
    parser.add_argument("--paper-defaults", action="store_true",
                        help="use the bundled default scenario")
    parser.add_argument("--seed", type=int, help="override the simulation seed")
    parser.add_argument("--samples", type=int, help="override the Monte-Carlo sample count")


def cmd_sweep(args) -> int:
    spec = _load_spec(args)
    rows = run_sweep(spec)
    destination = args.out if args.out else sys.stdout
    emit(rows, args.format, destination)
    if args.figures:
        from .plots import default_stem, render_figures
        for path in render_figures(rows, default_stem(args.out)):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def cmd_crossover(args) -> int:
    spec = _load_spec(args)
    needed = ("rates_closed", "oma_mc")
    spec = SweepSpec(profile=spec.profile, split=spec.split,
                     antenna_list=spec.antenna_list, r1=spec.r1, r2=spec.r2,
                     q_grid_db=spec.q_grid_db, sim=spec.sim, outputs=needed)
    rows = run_sweep(spec)
    results = find_crossover(rows)
    for (n_r, n_d), result in sorted(results.items()):
        if result is None:
            print(f"n_r={n_r} n_d={n_d}: no crossover on the grid (OMA dominates)")
        elif result.at_boundary:
            print(f"n_r={n_r} n_d={n_d}: NOMA dominates over the whole grid "
                  f"(>= {result.q_db:g} dB)")
        else:
            print(f"n_r={n_r} n_d={n_d}: crossover at {result.q_db:.3f} dB")
    return 0


def cmd_validate(args) -> int:
    spec = _load_spec(args)
    failures = 0
    checks = 0
    for antennas in spec.antenna_list:
        for q_db in spec.q_grid_db:
            q = db_to_linear(q_db)
            report = sum_rate(q, spec.profile, spec.split, antennas)
            est1, est2, _ = _mc_rates(q, spec.profile, spec.split, antennas, spec.sim)
            targets = make_targets(spec.r1, spec.r2, q, spec.split)
            p1 = outage_s1(targets, spec.profile, spec.split, antennas)
            p2 = outage_s2(targets, spec.profile, spec.split, antennas)
            o1, o2 = mc_outage(targets, spec.profile, spec.split, antennas, spec.sim)
            for name, analytic, est in (
                ("rate_s1", report.rate_s1, est1),
                ("rate_s2", report.rate_s2, est2),
                ("outage_s1", p1, o1),
                ("outage_s2", p2, o2),
            ):
                checks += 1
                gap = abs(est.mean - analytic)
                ok = gap <= 3.0 * est.std_error
                status = "ok" if ok else "FAIL"
                print(f"{status} n_r={antennas.n_r} n_d={antennas.n_d} q={q_db:g}dB "
                      f"{name}: analytic={analytic:.6g} mc={est.mean:.6g} "
                      f"se={est.std_error:.2g}")
                if not ok:
                    failures += 1
    print(f"{checks - failures}/{checks} checks within 3 standard errors")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crsnoma",
        description="Rates and outage for NOMA cooperative relaying under "
                    "an underlay peak-interference constraint.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run the grid sweep and emit a table")
    _add_common(p_sweep)
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--out", help="output path (default: stdout)")
    p_sweep.add_argument("--figures", action="store_true",
                         help="also render rate/outage figures next to the table")
    p_sweep.set_defaults(func=cmd_sweep)

    p_cross = sub.add_parser("crossover", help="report NOMA-over-OMA crossover budgets")
    _add_common(p_cross)
    p_cross.set_defaults(func=cmd_crossover)

    p_val = sub.add_parser("validate", help="analytic vs Monte-Carlo agreement suite")
    _add_common(p_val)
    p_val.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
