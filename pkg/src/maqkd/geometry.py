"""Earth and orbit geometry for ground stations and satellites.

All positions live in a common Earth-centered frame whose x-y plane is the
great circle through both ground stations; satellites share one circular
orbit in that plane.  Lengths are kilometers, angles radians, times seconds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GeometryDomainError

SPEED_OF_LIGHT_M_S = 299792458.0


@dataclass(frozen=True)
class GeometryConfig:
    """Physical constants of the Earth model."""

    earth_radius_km: float = 6371.0
    earth_mass_kg: float = 5.972e24
    gravitational_constant: float = 6.67408e-11
    speed_of_light_m_s: float = SPEED_OF_LIGHT_M_S

    def __post_init__(self) -> None:
        for name in (
            "earth_radius_km",
            "earth_mass_kg",
            "gravitational_constant",
            "speed_of_light_m_s",
        ):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_GEOMETRY = GeometryConfig()


@dataclass(frozen=True)
class GroundTrackLayout:
    """Placement of two ground stations and three satellites on one track.

    Satellite positions are fractional offsets along the A-to-B ground track
    in units of the total ground distance: 0.0 puts a satellite vertically
    above station A, 0.5 above the midpoint, 1.0 above B.  Negative offsets
    (satellite behind A) are allowed.
    """

    ground_distance_km: float
    orbital_height_km: float
    sat_fractions: tuple[float, float, float] = (0.0, 0.5, 1.0)

    def __post_init__(self) -> None:
        if self.ground_distance_km < 0:
            raise ValueError("ground_distance_km must be nonnegative")
        if not self.orbital_height_km > 0:
            raise ValueError("orbital_height_km must be strictly positive")
        if len(self.sat_fractions) != 3:
            raise ValueError("sat_fractions must hold offsets for S_A, S_C, S_B")
        for frac in self.sat_fractions:
            if not math.isfinite(frac):
                raise ValueError("sat_fractions must be finite")


def slant_range_km(
    ground_arc_km: float, height_km: float, geometry: GeometryConfig = DEFAULT_GEOMETRY
) -> float:
    """Line-of-sight distance from a ground station to a satellite.

    ``ground_arc_km`` is the along-surface distance between the station and
    the satellite's ground track point; ``height_km`` the orbital height.
    """
    r_e = geometry.earth_radius_km
    if ground_arc_km < 0:
        raise GeometryDomainError("ground arc must be nonnegative")
    if height_km <= 0:
        raise GeometryDomainError("height must be strictly positive")
    angle = ground_arc_km / r_e
    if angle >= math.pi:
        raise GeometryDomainError("ground arc exceeds half the Earth circumference")
    r_s = r_e + height_km
    return math.sqrt(r_e**2 + r_s**2 - 2.0 * r_e * r_s * math.cos(angle))


def elevation_angle_rad(
    ground_arc_km: float, height_km: float, geometry: GeometryConfig = DEFAULT_GEOMETRY
) -> float:
    """Elevation of the satellite above the station's local horizon.

    Returns pi/2 for a satellite at zenith and negative values once the
    satellite has dropped below the horizon.
    """
    r_e = geometry.earth_radius_km
    angle = ground_arc_km / r_e
    length = slant_range_km(ground_arc_km, height_km, geometry)
    return math.pi / 2.0 - angle - math.asin(r_e / length * math.sin(angle))


def orbital_period_s(
    height_km: float, geometry: GeometryConfig = DEFAULT_GEOMETRY
) -> float:
    """Period of a circular orbit at the given height (Kepler's third law)."""
    if height_km < 0:
        raise GeometryDomainError("height must be nonnegative")
    radius_m = (geometry.earth_radius_km + height_km) * 1e3
    mu = geometry.earth_mass_kg * geometry.gravitational_constant
    return 2.0 * math.pi * math.sqrt(radius_m**3 / mu)


def max_visible_arc_km(
    height_km: float, geometry: GeometryConfig = DEFAULT_GEOMETRY
) -> float:
    """Largest ground arc at which the satellite is still above the horizon."""
    r_e = geometry.earth_radius_km
    return r_e * math.acos(r_e / (r_e + height_km))


@dataclass(frozen=True)
class ConstellationGeometry:
    """Positions of both ground stations and all three satellites (km)."""

    ground_a: np.ndarray
    ground_b: np.ndarray
    sat_a: np.ndarray
    sat_c: np.ndarray
    sat_b: np.ndarray


def node_positions(
    layout: GroundTrackLayout,
    orbit_phase_s: float = 0.0,
    geometry: GeometryConfig = DEFAULT_GEOMETRY,
) -> ConstellationGeometry:
    """Locate all five nodes at a given time offset along the orbit.

    At phase 0 each satellite sits vertically above its configured fractional
    ground-track point; the whole constellation then advances rigidly with
    the orbital angular velocity.  Ground stations do not move.
    """
    r_e = geometry.earth_radius_km
    r_s = r_e + layout.orbital_height_km
    half_arc = layout.ground_distance_km / r_e / 2.0
    omega = 2.0 * math.pi / orbital_period_s(layout.orbital_height_km, geometry)

    def on_circle(radius: float, angle: float) -> np.ndarray:
        return np.array([radius * math.cos(angle), radius * math.sin(angle), 0.0])

    def sat_angle(fraction: float) -> float:
        return (fraction - 0.5) * 2.0 * half_arc + omega * orbit_phase_s

    frac_a, frac_c, frac_b = layout.sat_fractions
    return ConstellationGeometry(
        ground_a=on_circle(r_e, -half_arc),
        ground_b=on_circle(r_e, half_arc),
        sat_a=on_circle(r_s, sat_angle(frac_a)),
        sat_c=on_circle(r_s, sat_angle(frac_c)),
        sat_b=on_circle(r_s, sat_angle(frac_b)),
    )


def pair_distance_km(position_a: np.ndarray, position_b: np.ndarray) -> float:
    """Straight-line (chord) distance between two node positions."""
    return float(np.linalg.norm(np.asarray(position_a) - np.asarray(position_b)))


def elevation_from_positions(
    ground_position: np.ndarray, sat_position: np.ndarray
) -> float:
    """Elevation angle of a satellite as seen from a ground station.

    Measured between the local horizon plane (perpendicular to the station's
    zenith direction) and the line of sight.
    """
    ground = np.asarray(ground_position, dtype=float)
    line = np.asarray(sat_position, dtype=float) - ground
    zenith = ground / np.linalg.norm(ground)
    sine = float(np.dot(line, zenith) / np.linalg.norm(line))
    return math.asin(max(-1.0, min(1.0, sine)))


def propagation_delay_s(
    distance_km: float, geometry: GeometryConfig = DEFAULT_GEOMETRY
) -> float:
    """Light travel time over a straight-line distance."""
    return distance_km * 1e3 / geometry.speed_of_light_m_s
