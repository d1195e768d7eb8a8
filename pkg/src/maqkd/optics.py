"""Free-space link efficiencies and noise-click probabilities.

Covers paraxial Gaussian-beam diffraction with a pointing-error average,
elevation-dependent atmospheric transmission, device efficiencies, and the
dark-count / background-light noise model.  Distances here are meters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy import integrate, special

from .errors import QuadratureError

PLANCK_CONSTANT_J_S = 6.62607015e-34
SPEED_OF_LIGHT_M_S = 299792458.0


@dataclass(frozen=True)
class OpticalParams:
    """Transmitter, receiver and device parameters shared by all links.

    ``pointing_error_rad`` and ``receiver_radius_m`` default to 1 urad and
    0.5 m; these two baseline values are fallbacks and should normally be
    set explicitly in the run configuration.
    """

    wavelength_m: float = 780e-9
    divergence_half_angle_rad: float = 3e-6
    pointing_error_rad: float = 1e-6
    receiver_radius_m: float = 0.5
    zenith_transmittance: float = 0.8
    detector_efficiency: float = 0.7
    memory_efficiency: float = 0.8
    dark_count_prob: float = 1e-6

    def __post_init__(self) -> None:
        if not self.wavelength_m > 0:
            raise ValueError("wavelength_m must be strictly positive")
        if not self.divergence_half_angle_rad > 0:
            raise ValueError("divergence_half_angle_rad must be strictly positive")
        if not self.receiver_radius_m > 0:
            raise ValueError("receiver_radius_m must be strictly positive")
        if self.pointing_error_rad < 0:
            raise ValueError("pointing_error_rad must be nonnegative")
        for name in (
            "zenith_transmittance",
            "detector_efficiency",
            "memory_efficiency",
            "dark_count_prob",
        ):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")


@dataclass(frozen=True)
class BackgroundParams:
    """Sky-background model of the receiver telescope.

    The weather factor scales the clear-sky brightness: 1e-2 for daytime,
    1e-5 for a clear full-moon night, 1e-7 for a clear moonless night.
    """

    sky_brightness_w_m2_sr_um: float = 150.0
    field_of_view_sr: float = 3.14e-10
    filter_bandwidth_nm: float = 0.02
    weather_factor: float = 1e-7
    detection_window_s: float = 1e-6

    def __post_init__(self) -> None:
        for name in (
            "sky_brightness_w_m2_sr_um",
            "field_of_view_sr",
            "filter_bandwidth_nm",
            "detection_window_s",
        ):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if not 0.0 <= self.weather_factor <= 1.0:
            raise ValueError("weather_factor must lie in [0, 1]")


def beam_waist_m(wavelength_m: float, divergence_rad: float) -> float:
    """Initial waist of a diffraction-limited Gaussian beam."""
    if wavelength_m <= 0 or divergence_rad <= 0:
        raise ValueError("wavelength and divergence must be strictly positive")
    return wavelength_m / (divergence_rad * math.pi)


def beam_width_m(waist_m: float, divergence_rad: float, distance_m: float) -> float:
    """1/e^2 beam radius after propagating a distance from the waist."""
    if distance_m < 0:
        raise ValueError("distance must be nonnegative")
    return waist_m * math.sqrt(1.0 + (divergence_rad / waist_m) ** 2 * distance_m**2)


def _offset_beam_fraction(offset_m: float, width_m: float, aperture_m: float) -> float:
    """Power fraction of a Gaussian beam displaced by ``offset_m`` that falls
    inside a circular aperture.

    Radial integral of the azimuthally convolved intensity; the angular
    integral of the shifted Gaussian is a modified Bessel function, kept
    stable through its exponentially scaled form.
    """
    w2 = width_m * width_m

    def integrand(r: float) -> float:
        scaled_bessel = special.ive(0, 4.0 * r * offset_m / w2)
        return r * scaled_bessel * math.exp(-2.0 * (r - offset_m) ** 2 / w2)

    value, abserr = integrate.quad(
        integrand, 0.0, aperture_m, epsabs=1e-13, epsrel=1e-11, limit=200
    )
    if abserr > 1e-9:
        raise QuadratureError(
            f"aperture integral did not converge (abserr={abserr:.2e})"
        )
    return 4.0 / w2 * value


def diffraction_efficiency(
    distance_m: float, params: OpticalParams
) -> float:
    """Probability that a photon sent over ``distance_m`` hits the receiver.

    The transmitted Gaussian beam widens with distance and its center is
    smeared by a Gaussian pointing error of angular spread sigma_p; the
    collected fraction is the pointing average of the offset-beam aperture
    coupling, evaluated by adaptive quadrature.  Deterministic: the pointing
    jitter enters as an averaged intensity profile, not per-shot sampling.
    """
    if distance_m <= 0:
        raise ValueError("distance must be strictly positive")
    waist = beam_waist_m(params.wavelength_m, params.divergence_half_angle_rad)
    width = beam_width_m(waist, params.divergence_half_angle_rad, distance_m)
    smear = params.pointing_error_rad * distance_m
    return _cached_efficiency(width, smear, params.receiver_radius_m)


@lru_cache(maxsize=4096)
def _cached_efficiency(width_m: float, smear_m: float, aperture_m: float) -> float:
    if smear_m == 0.0:
        return _offset_beam_fraction(0.0, width_m, aperture_m)

    def weighted(offset: float) -> float:
        weight = offset / smear_m**2 * math.exp(-(offset**2) / (2.0 * smear_m**2))
        return weight * _offset_beam_fraction(offset, width_m, aperture_m)

    value, abserr = integrate.quad(
        weighted, 0.0, 12.0 * smear_m, epsabs=1e-12, epsrel=1e-10, limit=200
    )
    if abserr > 1e-9:
        raise QuadratureError(
            f"pointing average did not converge (abserr={abserr:.2e})"
        )
    return min(value, 1.0)


def atmospheric_efficiency(elevation_rad: float, zenith_transmittance: float) -> float:
    """Slant-path transmission following the 1/sin(elevation) airmass law.

    Returns 0 at or below the horizon.
    """
    if not 0.0 <= zenith_transmittance <= 1.0:
        raise ValueError("zenith_transmittance must lie in [0, 1]")
    if elevation_rad <= 0.0:
        return 0.0
    if elevation_rad > math.pi / 2.0:
        raise ValueError("elevation cannot exceed pi/2")
    return zenith_transmittance ** (1.0 / math.sin(elevation_rad))


def background_rate(
    background: BackgroundParams, receiver_radius_m: float, wavelength_m: float = 780e-9
) -> tuple[float, float]:
    """Sky-photon rate through the receiver and per-window click probability.

    Returns ``(photons_per_second, probability_per_detection_window)``.
    """
    area = math.pi * receiver_radius_m**2
    frequency = SPEED_OF_LIGHT_M_S / wavelength_m
    bandwidth_um = background.filter_bandwidth_nm * 1e-3
    rate = (
        background.weather_factor
        * background.sky_brightness_w_m2_sr_um
        * background.field_of_view_sr
        * area
        * bandwidth_um
        / (PLANCK_CONSTANT_J_S * frequency)
    )
    prob = -math.expm1(-rate * background.detection_window_s)
    return rate, prob


def combined_noise_prob(dark_count_prob: float, background_prob: float) -> float:
    """Per-window probability of any noise click (dark count or sky photon)."""
    return 1.0 - (1.0 - dark_count_prob) * (1.0 - background_prob)


def effective_click(eta: float, noise_prob: float) -> tuple[float, float]:
    """Click probability and genuine-click fraction of a noisy detector.

    A detection window succeeds if the photon arrives or either of the two
    detectors fires spuriously; ``alpha`` is the probability that a recorded
    click came from the real photon.
    """
    if not 0.0 <= eta <= 1.0 or not 0.0 <= noise_prob <= 1.0:
        raise ValueError("eta and noise_prob must lie in [0, 1]")
    if noise_prob == 0.0:
        if eta == 0.0:
            raise ValueError("effective click probability is zero (eta=0, no noise)")
        return eta, 1.0
    eta_eff = 1.0 - (1.0 - eta) * (1.0 - noise_prob) ** 2
    alpha = eta * (1.0 - noise_prob) / eta_eff
    return eta_eff, alpha


class LinkClass(str, Enum):
    GROUND_SAT = "ground-satellite"
    SAT_SAT = "satellite-satellite"
    GROUND_SAT_SAT = "ground-satellite-satellite"


@dataclass(frozen=True)
class LinkBudget:
    """Efficiency decomposition of one single-photon channel."""

    link_class: LinkClass
    distance_km: float
    diffraction: float
    atmosphere: float
    devices: float
    efficiency: float
    noise_click_prob: float

    @property
    def loss_db(self) -> float:
        return -10.0 * math.log10(self.efficiency)


def _budget(
    link_class: LinkClass,
    distance_km: float,
    diffraction: float,
    atmosphere: float,
    devices: float,
    noise_click_prob: float,
) -> LinkBudget:
    return LinkBudget(
        link_class=link_class,
        distance_km=distance_km,
        diffraction=diffraction,
        atmosphere=atmosphere,
        devices=devices,
        efficiency=diffraction * atmosphere * devices,
        noise_click_prob=noise_click_prob,
    )


def ground_link_budget(
    distance_km: float,
    elevation_rad: float,
    optical: OpticalParams,
    background: BackgroundParams,
    emissive_memory: bool,
) -> LinkBudget:
    """Photon from a satellite down to a ground detector.

    ``emissive_memory`` adds the memory efficiency of the on-board emissive
    memory whose photon half is being sent; detection efficiency, slant
    atmosphere and the combined dark-count/background click probability are
    always included.
    """
    eta_dif = diffraction_efficiency(distance_km * 1e3, optical)
    eta_atm = atmospheric_efficiency(elevation_rad, optical.zenith_transmittance)
    devices = optical.detector_efficiency
    if emissive_memory:
        devices *= optical.memory_efficiency
    _, p_bg = background_rate(background, optical.receiver_radius_m, optical.wavelength_m)
    noise = combined_noise_prob(optical.dark_count_prob, p_bg)
    return _budget(LinkClass.GROUND_SAT, distance_km, eta_dif, eta_atm, devices, noise)


def intersat_link_budget(
    distance_km: float,
    optical: OpticalParams,
    emissive_memory: bool,
    absorptive_memory: bool = True,
) -> LinkBudget:
    """Photon between two satellites; no atmosphere, heralded QND loading."""
    eta_dif = diffraction_efficiency(distance_km * 1e3, optical)
    devices = 1.0
    if emissive_memory:
        devices *= optical.memory_efficiency
    if absorptive_memory:
        devices *= optical.memory_efficiency
    return _budget(LinkClass.SAT_SAT, distance_km, eta_dif, 1.0, devices, 0.0)


@dataclass(frozen=True)
class SourcePathBudget:
    """Pair source on a satellite feeding one ground arm and one satellite arm.

    The two photons of each pair travel independent channels; the total
    efficiency is the product of the arm efficiencies.
    """

    ground_arm: LinkBudget
    memory_arm: LinkBudget

    @property
    def efficiency(self) -> float:
        return self.ground_arm.efficiency * self.memory_arm.efficiency

    @property
    def loss_db(self) -> float:
        return self.ground_arm.loss_db + self.memory_arm.loss_db


def source_path_budget(
    ground_distance_km: float,
    ground_elevation_rad: float,
    intersat_distance_km: float,
    optical: OpticalParams,
    background: BackgroundParams,
) -> SourcePathBudget:
    ground_arm = ground_link_budget(
        ground_distance_km, ground_elevation_rad, optical, background,
        emissive_memory=False,
    )
    memory_arm = intersat_link_budget(
        intersat_distance_km, optical, emissive_memory=False, absorptive_memory=True
    )
    return SourcePathBudget(ground_arm=ground_arm, memory_arm=memory_arm)


def link_budget(
    link_class: LinkClass,
    optical: OpticalParams,
    background: BackgroundParams,
    *,
    ground_distance_km: float | None = None,
    ground_elevation_rad: float | None = None,
    intersat_distance_km: float | None = None,
    emissive_memory: bool = False,
) -> LinkBudget | SourcePathBudget:
    """Dispatch to the budget of the requested link class."""
    if link_class is LinkClass.GROUND_SAT:
        return ground_link_budget(
            ground_distance_km, ground_elevation_rad, optical, background,
            emissive_memory=emissive_memory,
        )
    if link_class is LinkClass.SAT_SAT:
        return intersat_link_budget(
            intersat_distance_km, optical, emissive_memory=emissive_memory
        )
    if link_class is LinkClass.GROUND_SAT_SAT:
        return source_path_budget(
            ground_distance_km,
            ground_elevation_rad,
            intersat_distance_km,
            optical,
            background,
        )
    raise ValueError(f"unknown link class: {link_class}")
