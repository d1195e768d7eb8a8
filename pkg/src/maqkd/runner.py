"""Sweep orchestration and result emission.

A sweep expands the configured axes into a cartesian grid of parameter
points, runs one independent simulation per (point, scenario) and emits one
result row each.  Per-point seeds are derived by hashing the master seed
together with the point's resolved parameters, so adding, removing or
reordering points never changes the results of the others.  Output bytes are
deterministic for a fixed (seed, config, code version).
"""

from __future__ import annotations

import csv
import hashlib
import io
import itertools
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__, analysis, geometry, optics, protocols
from .analysis import OrbitPoint, RateResult
from .config import RunConfig, from_dict
from .errors import VisibilityError
from .simcore import SampleRecord

# sweep axis -> (section, key) it overrides
SWEEP_AXES: dict[str, tuple[str, str]] = {
    "distances_km": ("layout", "ground_distance_km"),
    "heights_km": ("layout", "orbital_height_km"),
    "sa_fractions": ("layout", "sa_fraction"),
    "divergences_rad": ("optics", "divergence_half_angle_rad"),
    "pointing_errors_rad": ("optics", "pointing_error_rad"),
    "receiver_radii_m": ("optics", "receiver_radius_m"),
    "dephasing_times_s": ("protocol", "dephasing_time_s"),
    "cutoffs_s": ("protocol", "cutoff_s"),
    "weather_factors": ("background", "weather_factor"),
}

INPUT_COLUMNS = [
    "scenario",
    "orbit_phase_s",
    "ground_distance_km",
    "orbital_height_km",
    "sa_fraction",
    "sc_fraction",
    "sb_fraction",
    "wavelength_m",
    "divergence_half_angle_rad",
    "pointing_error_rad",
    "receiver_radius_m",
    "zenith_transmittance",
    "detector_efficiency",
    "memory_efficiency",
    "dark_count_prob",
    "weather_factor",
    "clock_rate_hz",
    "n_modes",
    "cutoff_s",
    "dephasing_time_s",
    "samples_requested",
    "seed",
]

OUTPUT_COLUMNS = [
    "raw_rate_hz",
    "raw_rate_se",
    "error_x",
    "error_x_se",
    "error_z",
    "error_z_se",
    "key_rate_hz",
    "key_rate_se",
    "samples",
    "loss_db_ground_arm",
    "loss_db_memory_arm",
    "loss_db_total",
    "noise_click_prob",
    "background_click_prob",
    "status",
]

COLUMNS = INPUT_COLUMNS + OUTPUT_COLUMNS


@dataclass(frozen=True)
class SweepPoint:
    """One fully resolved simulation request."""

    scenario: str
    overrides: tuple[tuple[str, str, Any], ...]  # (section, key, value)
    orbit_phase_s: float = 0.0

    def apply(self, config: RunConfig) -> RunConfig:
        data = {s: dict(keys) for s, keys in config.data.items()}
        for section, key, value in self.overrides:
            data[section][key] = value
        return from_dict(data, warn_defaults=False)


def expand_sweep(config: RunConfig) -> list[SweepPoint]:
    """Cartesian product of all non-empty sweep axes, times the scenarios."""
    axes: list[list[tuple[str, str, Any]]] = []
    for axis, (section, key) in SWEEP_AXES.items():
        values = config["sweep"][axis]
        if values:
            axes.append([(section, key, value) for value in values])
    points = []
    for scenario in config.scenarios():
        for combo in itertools.product(*axes):
            points.append(SweepPoint(scenario=scenario, overrides=tuple(combo)))
    return points


def point_seed(master_seed: int, point: SweepPoint, resolved: RunConfig) -> int:
    """Stable per-point seed from the master seed and resolved parameters."""
    payload = {
        "master": master_seed,
        "scenario": point.scenario,
        "orbit_phase_s": point.orbit_phase_s,
        "geometry": resolved["geometry"],
        "layout": resolved["layout"],
        "optics": resolved["optics"],
        "background": resolved["background"],
        "protocol": {**resolved["protocol"], "scenario": point.scenario},
    }
    digest = hashlib.sha256(
        json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    ).digest()
    return int.from_bytes(digest[:16], "big")


@dataclass
class PointResult:
    point: SweepPoint
    seed: int
    samples_requested: int
    result: RateResult | None
    status: str
    loss_db_ground_arm: float | None = None
    loss_db_memory_arm: float | None = None
    noise_click_prob: float | None = None
    background_click_prob: float | None = None
    records: list[SampleRecord] | None = None


def _loss_columns(resolved: RunConfig, scenario: str, phase_s: float):
    """Per-point link budget diagnostics for the station-A side."""
    layout = resolved.layout()
    optical = resolved.optics()
    background = resolved.background()
    nodes = geometry.node_positions(layout, phase_s, resolved.geometry())
    source = nodes.sat_c if scenario.startswith("one_sat") else nodes.sat_a
    distance = geometry.pair_distance_km(nodes.ground_a, source)
    elevation = geometry.elevation_from_positions(nodes.ground_a, source)
    if elevation <= 0:
        raise VisibilityError("station A cannot see its satellite")
    ground = optics.ground_link_budget(
        distance, elevation, optical, background, emissive_memory=False
    )
    memory_db = None
    if not scenario.startswith("one_sat"):
        intersat = optics.intersat_link_budget(
            geometry.pair_distance_km(nodes.sat_a, nodes.sat_c),
            optical,
            emissive_memory=False,
        )
        memory_db = intersat.loss_db
    _, background_prob = optics.background_rate(
        background, optical.receiver_radius_m, optical.wavelength_m
    )
    return ground.loss_db, memory_db, ground.noise_click_prob, background_prob


def run_point(
    config: RunConfig,
    point: SweepPoint,
    samples_override: int | None = None,
    keep_records: bool = False,
) -> PointResult:
    """Simulate one sweep point; failures become rows with an error status."""
    resolved = point.apply(config)
    seed = point_seed(resolved["run"]["seed"], point, resolved)
    samples = (
        samples_override
        if samples_override is not None
        else resolved.samples_for(point.scenario)
    )
    out = PointResult(point, seed, samples, None, "ok")
    try:
        (
            out.loss_db_ground_arm,
            out.loss_db_memory_arm,
            out.noise_click_prob,
            out.background_click_prob,
        ) = _loss_columns(resolved, point.scenario, point.orbit_phase_s)
        layout = resolved.layout()
        optical = resolved.optics()
        background = resolved.background()
        geo = resolved.geometry()
        protocol_cfg = resolved.protocol(point.scenario)
        if point.scenario == "one_sat_baseline":
            rate = protocols.one_sat_baseline_rate(
                layout, optical, background, protocol_cfg, geo, point.orbit_phase_s
            )
            out.result = RateResult(rate, 0.0, 0.0, rate, 0)
            return out
        builder = protocols.SCENARIOS[point.scenario]
        setup = builder(
            layout, optical, background, protocol_cfg, geo, point.orbit_phase_s
        )
        if point.scenario == "scenario1":
            records = protocols.run_scenario1(setup, samples, seed)
        else:
            records = protocols.run_chain(setup, samples, seed)
        out.result = analysis.key_rate(records, records[-1].time_s)
        if keep_records:
            out.records = records
        return out
    except VisibilityError as exc:
        out.status = f"error:visibility ({exc})"
    except Exception as exc:  # recorded per point, the sweep continues
        out.status = f"error:{type(exc).__name__} ({exc})"
    return out


def _run_point_task(args) -> PointResult:
    config_data, point, samples_override, keep_records = args
    return run_point(
        from_dict(config_data, warn_defaults=False),
        point,
        samples_override,
        keep_records,
    )


def run_sweep(
    config: RunConfig,
    points: Sequence[SweepPoint] | None = None,
    samples_override: int | None = None,
    keep_records: bool = False,
) -> list[PointResult]:
    """Run all sweep points, optionally across worker processes.

    Results always come back in point order regardless of completion order.
    """
    if points is None:
        points = expand_sweep(config)
    workers = config["run"]["workers"]
    if workers <= 1 or len(points) <= 1:
        return [
            run_point(config, point, samples_override, keep_records)
            for point in points
        ]
    tasks = [
        (config.to_dict(), point, samples_override, keep_records) for point in points
    ]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_point_task, tasks))


# --- orbit sweeps ------------------------------------------------------------


def required_ground_links(scenario: str) -> list[tuple[str, int]]:
    """(station, satellite-slot) pairs whose visibility gates the protocol."""
    if scenario.startswith("one_sat"):
        return [("a", 1), ("b", 1)]
    return [("a", 0), ("b", 2)]


def visibility_half_span_s(
    config: RunConfig, scenario: str
) -> tuple[float, float]:
    """Geometric visibility of the constellation along the orbit.

    Returns (half span to use for a symmetric grid, total window length in
    seconds during which every required ground link is above the horizon).
    """
    layout = config.layout()
    geo = config.geometry()
    r_e = geo.earth_radius_km
    arc = layout.ground_distance_km / r_e
    horizon = geometry.max_visible_arc_km(layout.orbital_height_km, geo) / r_e
    omega = 2.0 * math.pi / geometry.orbital_period_s(layout.orbital_height_km, geo)
    station_angle = {"a": -arc / 2.0, "b": arc / 2.0}
    low, high = -math.inf, math.inf
    for station, slot in required_ground_links(scenario):
        sat_angle0 = (layout.sat_fractions[slot] - 0.5) * arc
        center = station_angle[station] - sat_angle0
        low = max(low, (center - horizon) / omega)
        high = min(high, (center + horizon) / omega)
    window = max(0.0, high - low)
    half_span = max(abs(low), abs(high)) if window > 0 else horizon / omega
    return half_span, window


def run_orbit_sweep(
    config: RunConfig,
    scenario: str,
    samples_override: int | None = None,
) -> tuple[list[PointResult], list[OrbitPoint], analysis.OrbitSweepResult, dict]:
    """Static simulations along a symmetric orbit-phase grid, then the
    pass-integrated effective rates."""
    half_span = config["orbit"]["phase_half_span_s"]
    geometric_window = None
    if half_span is None:
        half_span, geometric_window = visibility_half_span_s(config, scenario)
    grid = np.linspace(-half_span, half_span, config["orbit"]["phase_points"])
    points = [
        SweepPoint(scenario=scenario, overrides=(), orbit_phase_s=float(phase))
        for phase in grid
    ]
    results = run_sweep(config, points, samples_override)
    orbit_points = [
        OrbitPoint(
            point.point.orbit_phase_s,
            point.result if point.result is not None else analysis.ZERO_RATE,
        )
        for point in results
    ]
    effective = analysis.effective_rate(
        orbit_points, config["layout"]["orbital_height_km"], config.geometry()
    )
    summary = {
        "scenario": scenario,
        "phase_half_span_s": float(half_span),
        "phase_points": int(config["orbit"]["phase_points"]),
        "geometric_window_s": geometric_window,
        "positive_key_window_s": analysis.positive_rate_window_s(orbit_points),
        "raw_bits_per_pass": effective.raw_bits_per_pass,
        "mean_error_x": effective.mean_error_x,
        "mean_error_z": effective.mean_error_z,
        "key_bits_per_pass": effective.key_bits_per_pass,
        "effective_key_rate_hz": effective.effective_key_rate_hz,
        "integration_window_s": effective.window_s,
        "orbital_period_s": effective.orbital_period_s,
    }
    return results, orbit_points, effective, summary


# --- emission ----------------------------------------------------------------


def _format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if math.isinf(value):
        return "inf"
    return f"{value:.12e}"


def result_row(config: RunConfig, point_result: PointResult) -> dict[str, Any]:
    resolved = point_result.point.apply(config)
    layout = resolved["layout"]
    sb = layout["sb_fraction"]
    if sb is None:
        sb = 1.0 - layout["sa_fraction"]
    row: dict[str, Any] = {
        "scenario": point_result.point.scenario,
        "orbit_phase_s": point_result.point.orbit_phase_s,
        "ground_distance_km": layout["ground_distance_km"],
        "orbital_height_km": layout["orbital_height_km"],
        "sa_fraction": layout["sa_fraction"],
        "sc_fraction": layout["sc_fraction"],
        "sb_fraction": sb,
        "seed": point_result.seed,
        "samples_requested": point_result.samples_requested,
        "clock_rate_hz": resolved["protocol"]["clock_rate_hz"],
        "n_modes": resolved["protocol"]["n_modes"],
        "cutoff_s": resolved["protocol"]["cutoff_s"],
        "dephasing_time_s": resolved["protocol"]["dephasing_time_s"],
        "weather_factor": resolved["background"]["weather_factor"],
        "status": point_result.status,
        "loss_db_ground_arm": point_result.loss_db_ground_arm,
        "loss_db_memory_arm": point_result.loss_db_memory_arm,
        "noise_click_prob": point_result.noise_click_prob,
        "background_click_prob": point_result.background_click_prob,
    }
    for key in (
        "wavelength_m",
        "divergence_half_angle_rad",
        "pointing_error_rad",
        "receiver_radius_m",
        "zenith_transmittance",
        "detector_efficiency",
        "memory_efficiency",
        "dark_count_prob",
    ):
        row[key] = resolved["optics"][key]
    total = None
    if point_result.loss_db_ground_arm is not None:
        total = point_result.loss_db_ground_arm + (point_result.loss_db_memory_arm or 0.0)
    row["loss_db_total"] = total
    result = point_result.result
    if result is not None:
        row.update(
            raw_rate_hz=result.raw_rate_hz,
            raw_rate_se=result.raw_rate_se,
            error_x=result.error_x,
            error_x_se=result.error_x_se,
            error_z=result.error_z,
            error_z_se=result.error_z_se,
            key_rate_hz=result.key_rate_hz,
            key_rate_se=result.key_rate_se,
            samples=result.samples,
        )
    else:
        row.update(
            raw_rate_hz=None, raw_rate_se=None, error_x=None, error_x_se=None,
            error_z=None, error_z_se=None, key_rate_hz=None, key_rate_se=None,
            samples=None,
        )
    return row


def rows_to_csv(rows: Sequence[dict[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([_format_value(row.get(column)) for column in COLUMNS])
    return buffer.getvalue()


def rows_to_json(rows: Sequence[dict[str, Any]]) -> str:
    payload = []
    for row in rows:
        entry = {}
        for column in COLUMNS:
            value = row.get(column)
            if isinstance(value, float) and math.isinf(value):
                value = "inf"
            entry[column] = value
        payload.append(entry)
    return json.dumps(payload, indent=2) + "\n"


def records_to_csv(records: Sequence[SampleRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["time_s", "phi_plus", "phi_minus", "psi_plus", "psi_minus"])
    for record in records:
        writer.writerow(
            [f"{record.time_s:.12e}"] + [f"{p:.12e}" for p in record.state]
        )
    return buffer.getvalue()


def read_records_csv(path: str | Path) -> list[SampleRecord]:
    from .quantum import BellDiagonalState

    records = []
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        for row in reader:
            records.append(
                SampleRecord(
                    float(row["time_s"]),
                    BellDiagonalState(
                        float(row["phi_plus"]),
                        float(row["phi_minus"]),
                        float(row["psi_plus"]),
                        float(row["psi_minus"]),
                    ),
                )
            )
    return records


def write_outputs(
    config: RunConfig,
    results: Sequence[PointResult],
    out_dir: str | Path,
    stem: str,
    wall_time_s: float,
    extra_manifest: dict | None = None,
) -> dict[str, Path]:
    """Write result table(s), manifest and optional record dumps."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = [result_row(config, result) for result in results]
    written: dict[str, Path] = {}
    formats = config["run"]["formats"]
    if "csv" in formats:
        path = out / f"{stem}.csv"
        path.write_text(rows_to_csv(rows))
        written["csv"] = path
    if "json" in formats:
        path = out / f"{stem}.json"
        path.write_text(rows_to_json(rows))
        written["json"] = path
    if config["run"]["dump_records"]:
        for index, result in enumerate(results):
            if result.records:
                path = out / f"{stem}_records_{index:04d}.csv"
                path.write_text(records_to_csv(result.records))
                written[f"records_{index}"] = path
    manifest = {
        "config_sha256": hashlib.sha256(config.canonical_json().encode()).hexdigest(),
        "master_seed": config["run"]["seed"],
        "code_version": __version__,
        "numpy_version": np.__version__,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "wall_time_s": wall_time_s,
        "rows": len(rows),
    }
    if extra_manifest:
        manifest.update(extra_manifest)
    manifest_path = out / f"{stem}.manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    written["manifest"] = manifest_path
    return written


def timed(func, *args, **kwargs):
    start = time.perf_counter()
    value = func(*args, **kwargs)
    return value, time.perf_counter() - start
