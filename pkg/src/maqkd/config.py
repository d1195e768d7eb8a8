"""Run configuration: schema, validation, defaults, (de)serialization.

Configs are JSON or YAML files with the sections ``geometry``, ``layout``,
``optics``, ``background``, ``protocol``, ``run``, ``sweep`` and ``orbit``.
Every key has a default; unknown keys are rejected with their full path.
Keys whose baseline values are fallbacks rather than confirmed settings
(receiver radius, pointing error, mode count, cutoff, dephasing time) emit a
warning when left at their defaults.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from .errors import ConfigError
from .geometry import GeometryConfig, GroundTrackLayout
from .optics import BackgroundParams, OpticalParams
from .protocols import SCENARIOS, ProtocolConfig

UNCONFIRMED_DEFAULTS = {
    "optics.receiver_radius_m",
    "optics.pointing_error_rad",
    "protocol.n_modes",
    "protocol.cutoff_s",
    "protocol.dephasing_time_s",
}

_NUMBER = (int, float)

# section -> key -> (expected type(s), default)
SCHEMA: dict[str, dict[str, tuple]] = {
    "geometry": {
        "earth_radius_km": (_NUMBER, 6371.0),
        "earth_mass_kg": (_NUMBER, 5.972e24),
        "gravitational_constant": (_NUMBER, 6.67408e-11),
        "speed_of_light_m_s": (_NUMBER, 299792458.0),
    },
    "layout": {
        "ground_distance_km": (_NUMBER, 4400.0),
        "orbital_height_km": (_NUMBER, 400.0),
        "sa_fraction": (_NUMBER, 0.0),
        "sc_fraction": (_NUMBER, 0.5),
        # None mirrors sa_fraction: sb = 1 - sa
        "sb_fraction": ((*_NUMBER, type(None)), None),
    },
    "optics": {
        "wavelength_m": (_NUMBER, 780e-9),
        "divergence_half_angle_rad": (_NUMBER, 3e-6),
        "pointing_error_rad": (_NUMBER, 1e-6),
        "receiver_radius_m": (_NUMBER, 0.5),
        "zenith_transmittance": (_NUMBER, 0.8),
        "detector_efficiency": (_NUMBER, 0.7),
        "memory_efficiency": (_NUMBER, 0.8),
        "dark_count_prob": (_NUMBER, 1e-6),
    },
    "background": {
        "sky_brightness_w_m2_sr_um": (_NUMBER, 150.0),
        "field_of_view_sr": (_NUMBER, 3.14e-10),
        "filter_bandwidth_nm": (_NUMBER, 0.02),
        "weather_factor": (_NUMBER, 1e-7),
        "detection_window_s": (_NUMBER, 1e-6),
    },
    "protocol": {
        "scenario": ((str, list), "scenario1"),
        "clock_rate_hz": (_NUMBER, 20e6),
        "n_modes": (int, 1000),
        "cutoff_s": ((*_NUMBER, type(None)), 0.05),
        "dephasing_time_s": (_NUMBER, 0.1),
    },
    "run": {
        "seed": (int, 12345),
        "samples": ((int, type(None)), None),
        "output_dir": (str, "results"),
        "formats": (list, ["csv"]),
        "dump_records": (bool, False),
        "workers": (int, 1),
    },
    "sweep": {
        "distances_km": (list, []),
        "heights_km": (list, []),
        "sa_fractions": (list, []),
        "divergences_rad": (list, []),
        "pointing_errors_rad": (list, []),
        "receiver_radii_m": (list, []),
        "dephasing_times_s": (list, []),
        "cutoffs_s": (list, []),
        "weather_factors": (list, []),
    },
    "orbit": {
        # None derives the half span from the joint visibility window
        "phase_half_span_s": ((*_NUMBER, type(None)), None),
        "phase_points": (int, 41),
    },
}

# documented default sample counts per scenario
DEFAULT_SAMPLES = {
    "scenario1": 100_000,
    "scenario2": 10_000,
    "one_sat_memory": 10_000,
    "one_sat_baseline": 0,
}


@dataclass
class RunConfig:
    """Validated configuration with defaults filled in."""

    data: dict[str, dict[str, Any]]

    def __getitem__(self, section: str) -> dict[str, Any]:
        return self.data[section]

    # -- typed views

    def geometry(self) -> GeometryConfig:
        return GeometryConfig(**self.data["geometry"])

    def layout(self) -> GroundTrackLayout:
        section = self.data["layout"]
        sa = section["sa_fraction"]
        sb = section["sb_fraction"]
        if sb is None:
            sb = 1.0 - sa
        return GroundTrackLayout(
            ground_distance_km=section["ground_distance_km"],
            orbital_height_km=section["orbital_height_km"],
            sat_fractions=(sa, section["sc_fraction"], sb),
        )

    def optics(self) -> OpticalParams:
        return OpticalParams(**self.data["optics"])

    def background(self) -> BackgroundParams:
        return BackgroundParams(**self.data["background"])

    def scenarios(self) -> list[str]:
        raw = self.data["protocol"]["scenario"]
        names = [raw] if isinstance(raw, str) else list(raw)
        for name in names:
            if name not in SCENARIOS:
                raise ConfigError(
                    f"protocol.scenario: unknown scenario {name!r};"
                    f" expected one of {sorted(SCENARIOS)}"
                )
        return names

    def protocol(self, scenario: str | None = None) -> ProtocolConfig:
        section = self.data["protocol"]
        cutoff = section["cutoff_s"]
        return ProtocolConfig(
            scenario=scenario or self.scenarios()[0],
            clock_rate_hz=section["clock_rate_hz"],
            n_modes=section["n_modes"],
            cutoff_s=None if cutoff is None else float(cutoff),
            dephasing_time_s=section["dephasing_time_s"],
        )

    def samples_for(self, scenario: str) -> int:
        configured = self.data["run"]["samples"]
        if configured is not None:
            return configured
        return DEFAULT_SAMPLES[scenario]

    def to_dict(self) -> dict:
        return {s: dict(keys) for s, keys in self.data.items()}

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def _check_type(path: str, value: Any, expected) -> Any:
    if isinstance(value, bool) and bool not in (
        expected if isinstance(expected, tuple) else (expected,)
    ):
        raise ConfigError(f"{path}: expected {expected}, got boolean")
    if not isinstance(value, expected):
        raise ConfigError(
            f"{path}: expected {getattr(expected, '__name__', expected)},"
            f" got {type(value).__name__} ({value!r})"
        )
    return value


def from_dict(raw: dict | None, warn_defaults: bool = True) -> RunConfig:
    """Validate a raw mapping against the schema and fill defaults."""
    raw = raw or {}
    if not isinstance(raw, dict):
        raise ConfigError(f"top level: expected a mapping, got {type(raw).__name__}")
    unknown_sections = set(raw) - set(SCHEMA)
    if unknown_sections:
        raise ConfigError(f"unknown section(s): {', '.join(sorted(unknown_sections))}")

    data: dict[str, dict[str, Any]] = {}
    for section, keys in SCHEMA.items():
        given = raw.get(section, {})
        if not isinstance(given, dict):
            raise ConfigError(f"{section}: expected a mapping")
        unknown = set(given) - set(keys)
        if unknown:
            raise ConfigError(
                f"unknown key(s): {', '.join(sorted(f'{section}.{k}' for k in unknown))}"
            )
        resolved = {}
        for key, (expected, default) in keys.items():
            path = f"{section}.{key}"
            if key in given:
                value = _check_type(path, given[key], expected)
                if isinstance(value, float) and value != value:
                    raise ConfigError(f"{path}: NaN is not a valid value")
            else:
                value = default.copy() if isinstance(default, list) else default
                if warn_defaults and path in UNCONFIRMED_DEFAULTS:
                    warnings.warn(
                        f"{path} left at its baseline fallback ({default});"
                        " set it explicitly to silence this warning",
                        stacklevel=2,
                    )
            resolved[key] = value
        data[section] = resolved

    config = RunConfig(data)
    _validate_semantics(config)
    return config


def _validate_semantics(config: RunConfig) -> None:
    """Run the domain-type validators so bad values name their config key."""
    for section, build in (
        ("geometry", config.geometry),
        ("layout", config.layout),
        ("optics", config.optics),
        ("background", config.background),
        ("protocol", config.protocol),
    ):
        try:
            build()
        except ValueError as exc:
            raise ConfigError(f"{section}: {exc}") from exc
    config.scenarios()
    run = config["run"]
    if run["workers"] < 1:
        raise ConfigError("run.workers: must be at least 1")
    if run["samples"] is not None and run["samples"] < 0:
        raise ConfigError("run.samples: must be nonnegative")
    for fmt in run["formats"]:
        if fmt not in ("csv", "json"):
            raise ConfigError(f"run.formats: unknown format {fmt!r}")
    orbit = config["orbit"]
    if orbit["phase_points"] < 2:
        raise ConfigError("orbit.phase_points: need at least 2 grid points")
    span = orbit["phase_half_span_s"]
    if span is not None and span <= 0:
        raise ConfigError("orbit.phase_half_span_s: must be strictly positive")
    for key, values in config["sweep"].items():
        for value in values:
            if key == "cutoffs_s" and value is None:
                continue
            if not isinstance(value, _NUMBER) or isinstance(value, bool):
                raise ConfigError(f"sweep.{key}: entries must be numbers")


def parse_config(path: str | Path | None) -> RunConfig:
    """Load and validate a JSON or YAML config file.

    A missing path or empty file yields the all-defaults configuration (with
    warnings for the fallback keys).
    """
    if path is None:
        return from_dict({})
    text = Path(path).read_text()
    if not text.strip():
        return from_dict({})
    if str(path).endswith((".yaml", ".yml")):
        raw = yaml.safe_load(text)
    else:
        try:
            raw = json.loads(text)
        except json.JSONDecodeError:
            raw = yaml.safe_load(text)
    return from_dict(raw)


def dump_config(config: RunConfig, path: str | Path) -> None:
    payload = json.dumps(config.to_dict(), indent=2, sort_keys=True) + "\n"
    Path(path).write_text(payload)
