"""Parameter sweeps over the interference budget and table output.

A sweep evaluates the closed-form rates/outages and their Monte-Carlo
estimates on a grid of interference budgets (given in dB, stored linear)
for one or more antenna configurations, and emits the results as a CSV or
JSON table whose column order is fixed.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass

from .channels import AntennaConfig, ChannelProfile
from .closed_form import PowerSplit, sum_rate
from .montecarlo import SimConfig, _mc_rates, mc_outage, mc_rate_oma
from .outage import make_targets, outage_s1, outage_s2

ALL_OUTPUTS = ("rates_closed", "rates_mc", "oma_mc", "outage_closed", "outage_mc")

CSV_COLUMNS = (
    "q_db", "q_linear", "n_r", "n_d",
    "rate_s1_cf", "rate_s2_cf", "rate_sum_cf",
    "rate_sum_mc", "rate_sum_mc_stderr",
    "rate_oma_mc", "rate_oma_mc_stderr",
    "outage_s1_cf", "outage_s2_cf",
    "outage_s1_mc", "outage_s2_mc",
)


class ConfigError(ValueError):
    """Sweep configuration problem, with the offending field in the message."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field_name = field_name


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(linear: float) -> float:
    return 10.0 * math.log10(linear)


@dataclass(frozen=True)
class SweepSpec:
    """Everything a sweep needs: scenario, grid, sampling, and output set."""

    profile: ChannelProfile
    split: PowerSplit
    antenna_list: tuple[AntennaConfig, ...]
    r1: float
    r2: float
    q_grid_db: tuple[float, ...]
    sim: SimConfig
    outputs: tuple[str, ...] = ALL_OUTPUTS

    def __post_init__(self):
        if not self.antenna_list:
            raise ConfigError("antenna_list", "must contain at least one antenna config")
        if not self.q_grid_db:
            raise ConfigError("q_grid_db", "must contain at least one value")
        if any(b <= a for a, b in zip(self.q_grid_db, self.q_grid_db[1:])):
            raise ConfigError("q_grid_db", "must be strictly increasing")
        if not (self.r1 > 0 and self.r2 > 0):
            raise ConfigError("targets", f"target rates must be positive, got ({self.r1}, {self.r2})")
        unknown = set(self.outputs) - set(ALL_OUTPUTS)
        if unknown:
            raise ConfigError("outputs", f"unknown output selections: {sorted(unknown)}")


def paper_scenario(seed: int = 42, n_samples: int = 1_000_000) -> SweepSpec:
    """The bundled default scenario used throughout the experiments."""
    return SweepSpec(
        profile=ChannelProfile(omega_sr=10.0, omega_sd=1.0, omega_rd=10.0,
                               omega_sp=5.5, omega_rp=5.5),
        split=PowerSplit.from_a2(0.1),
        antenna_list=(AntennaConfig(1, 1), AntennaConfig(2, 2), AntennaConfig(3, 3)),
        r1=1.0,
        r2=1.0,
        q_grid_db=tuple(float(db) for db in range(-10, 31, 2)),
        sim=SimConfig(n_samples=n_samples, seed=seed),
    )


def spec_from_config(config: dict) -> SweepSpec:
    """Build a SweepSpec from a parsed config mapping (see README for schema)."""
    def require(mapping, key, where):
        if key not in mapping:
            raise ConfigError(f"{where}.{key}" if where else key, "missing required field")
        return mapping[key]

    prof = require(config, "profile", "")
    try:
        profile = ChannelProfile(**{k: float(require(prof, k, "profile"))
                                    for k in ("omega_sr", "omega_sd", "omega_rd",
                                              "omega_sp", "omega_rp")})
    except ValueError as exc:
        raise ConfigError("profile", str(exc)) from exc

    split_cfg = require(config, "split", "")
    try:
        if "a1" in split_cfg:
            split = PowerSplit(a1=float(split_cfg["a1"]), a2=float(require(split_cfg, "a2", "split")))
        else:
            split = PowerSplit.from_a2(float(require(split_cfg, "a2", "split")))
    except ValueError as exc:
        raise ConfigError("split", str(exc)) from exc

    antennas_cfg = require(config, "antennas", "")
    try:
        antenna_list = tuple(AntennaConfig(int(nr), int(nd)) for nr, nd in antennas_cfg)
    except (TypeError, ValueError) as exc:
        raise ConfigError("antennas", str(exc)) from exc

    targets_cfg = require(config, "targets", "")
    r1 = float(require(targets_cfg, "r1", "targets"))
    r2 = float(require(targets_cfg, "r2", "targets"))

    grid_cfg = require(config, "q_grid_db", "")
    if isinstance(grid_cfg, dict):
        start = float(require(grid_cfg, "start", "q_grid_db"))
        stop = float(require(grid_cfg, "stop", "q_grid_db"))
        num = int(require(grid_cfg, "num", "q_grid_db"))
        if num < 1:
            raise ConfigError("q_grid_db.num", f"must be positive, got {num}")
        step = (stop - start) / (num - 1) if num > 1 else 0.0
        q_grid = tuple(start + i * step for i in range(num))
    else:
        q_grid = tuple(float(v) for v in grid_cfg)

    sim_cfg = config.get("sim", {})
    try:
        sim = SimConfig(
            n_samples=int(sim_cfg.get("n_samples", SimConfig.n_samples)),
            seed=int(sim_cfg.get("seed", SimConfig.seed)),
            chunk_size=int(sim_cfg.get("chunk_size", SimConfig.chunk_size)),
        )
    except ValueError as exc:
        raise ConfigError("sim", str(exc)) from exc

    outputs = tuple(config.get("outputs", ALL_OUTPUTS))
    return SweepSpec(profile=profile, split=split, antenna_list=antenna_list,
                     r1=r1, r2=r2, q_grid_db=q_grid, sim=sim, outputs=outputs)


@dataclass
class SweepRow:
    """One grid point; fields not selected in the output set stay None."""

    q_db: float
    q_linear: float
    n_r: int
    n_d: int
    rate_s1_cf: float | None = None
    rate_s2_cf: float | None = None
    rate_sum_cf: float | None = None
    rate_sum_mc: float | None = None
    rate_sum_mc_stderr: float | None = None
    rate_oma_mc: float | None = None
    rate_oma_mc_stderr: float | None = None
    outage_s1_cf: float | None = None
    outage_s2_cf: float | None = None
    outage_s1_mc: float | None = None
    outage_s2_mc: float | None = None


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate the requested quantities at every (antenna config, q) point.

    Rows are ordered by antenna config, then by increasing q.
    """
    rows = []
    want = set(spec.outputs)
    for antennas in spec.antenna_list:
        for q_db in spec.q_grid_db:
            q = db_to_linear(q_db)
            row = SweepRow(q_db=q_db, q_linear=q, n_r=antennas.n_r, n_d=antennas.n_d)
            if "rates_closed" in want:
                report = sum_rate(q, spec.profile, spec.split, antennas)
                row.rate_s1_cf = report.rate_s1
                row.rate_s2_cf = report.rate_s2
                row.rate_sum_cf = report.rate_sum
            if "rates_mc" in want:
                _, _, est_sum = _mc_rates(q, spec.profile, spec.split, antennas, spec.sim)
                row.rate_sum_mc = est_sum.mean
                row.rate_sum_mc_stderr = est_sum.std_error
            if "oma_mc" in want:
                est = mc_rate_oma(q, spec.profile, antennas, spec.sim)
                row.rate_oma_mc = est.mean
                row.rate_oma_mc_stderr = est.std_error
            if "outage_closed" in want or "outage_mc" in want:
                targets = make_targets(spec.r1, spec.r2, q, spec.split)
                if "outage_closed" in want:
                    row.outage_s1_cf = outage_s1(targets, spec.profile, spec.split, antennas)
                    row.outage_s2_cf = outage_s2(targets, spec.profile, spec.split, antennas)
                if "outage_mc" in want:
                    est1, est2 = mc_outage(targets, spec.profile, spec.split, antennas, spec.sim)
                    row.outage_s1_mc = est1.mean
                    row.outage_s2_mc = est2.mean
            rows.append(row)
    return rows


@dataclass(frozen=True)
class CrossoverResult:
    """Budget (dB) at which the NOMA sum rate first exceeds the OMA rate.

    ``at_boundary`` marks dominance over the whole grid (no sign change);
    the grid minimum is reported in that case.
    """

    q_db: float
    at_boundary: bool = False


def find_crossover(rows: list[SweepRow]) -> dict[tuple[int, int], CrossoverResult | None]:
    """Locate the NOMA-over-OMA crossover per antenna configuration.

    Linear interpolation in dB of the rate difference's sign change; None
    when OMA dominates everywhere on the grid.
    """
    by_config: dict[tuple[int, int], list[SweepRow]] = {}
    for row in rows:
        if row.rate_sum_cf is None or row.rate_oma_mc is None:
            raise ValueError("crossover needs rate_sum_cf and rate_oma_mc columns")
        by_config.setdefault((row.n_r, row.n_d), []).append(row)

    results: dict[tuple[int, int], CrossoverResult | None] = {}
    for config, config_rows in by_config.items():
        config_rows.sort(key=lambda r: r.q_db)
        diff = [r.rate_sum_cf - r.rate_oma_mc for r in config_rows]
        if diff[0] > 0:
            results[config] = CrossoverResult(q_db=config_rows[0].q_db, at_boundary=True)
            continue
        found = None
        for i in range(len(diff) - 1):
            if diff[i] <= 0 < diff[i + 1]:
                q_lo, q_hi = config_rows[i].q_db, config_rows[i + 1].q_db
                frac = -diff[i] / (diff[i + 1] - diff[i])
                found = CrossoverResult(q_db=q_lo + frac * (q_hi - q_lo))
                break
        results[config] = found
    return results


def _format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def emit(rows: list[SweepRow], fmt: str, destination) -> None:
    """Write the table as CSV or JSON; floats keep 17 significant digits.

    ``destination`` is a path or an open text file.
    """
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")
    own = isinstance(destination, (str, bytes)) or hasattr(destination, "__fspath__")
    try:
        handle = open(destination, "w", newline="") if own else destination
    except OSError as exc:
        raise OSError(f"cannot write sweep output to {destination}: {exc}") from exc
    try:
        if fmt == "csv":
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for row in rows:
                writer.writerow([_format_value(getattr(row, col)) for col in CSV_COLUMNS])
        else:
            payload = [
                {col: getattr(row, col) for col in CSV_COLUMNS}
                for row in rows
            ]
            json.dump(payload, handle, indent=2)
            handle.write("\n")
    finally:
        if own:
            handle.close()
