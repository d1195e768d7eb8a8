import math

import numpy as np
import pytest

from maqkd import optics
from maqkd.optics import BackgroundParams, LinkClass, OpticalParams

import oracles


BASE = OpticalParams()
NO_JITTER = OpticalParams(pointing_error_rad=0.0)
BG = BackgroundParams()


def test_beam_waist_values():
    assert optics.beam_waist_m(780e-9, 3e-6) == pytest.approx(0.08276057040778559)
    assert optics.beam_waist_m(780e-9, 8e-6) == pytest.approx(0.031035213902919596)


def test_beam_waist_inverse_proportionality():
    assert optics.beam_waist_m(780e-9, 6e-6) == pytest.approx(
        optics.beam_waist_m(780e-9, 3e-6) / 2.0
    )


def test_beam_width_values():
    w0 = optics.beam_waist_m(780e-9, 3e-6)
    assert optics.beam_width_m(w0, 3e-6, 0.0) == w0
    assert optics.beam_width_m(w0, 3e-6, 500e3) == pytest.approx(1.5022813691230485)
    # far-field asymptote: w(z)/z approaches the divergence angle
    w = optics.beam_width_m(w0, 3e-6, 500e3)
    assert abs(w / 500e3 - 3e-6) / 3e-6 < 0.002


def test_diffraction_sigma0_matches_closed_form():
    w0 = optics.beam_waist_m(780e-9, 3e-6)
    for z in np.logspace(3, math.log10(4e7), 100):
        width = optics.beam_width_m(w0, 3e-6, z)
        closed = oracles.gaussian_aperture_fraction(width, 0.5)
        assert optics.diffraction_efficiency(z, NO_JITTER) == pytest.approx(
            closed, abs=1e-6
        )


def test_diffraction_near_field_all_collected():
    # aperture much wider than the waist collects essentially everything
    params = OpticalParams(pointing_error_rad=0.0, receiver_radius_m=5.0)
    assert optics.diffraction_efficiency(1.0, params) == pytest.approx(1.0, abs=1e-9)


def test_diffraction_example_value():
    # frozen: closed-form oracle at z=500 km, theta_d=3 urad, R=0.5 m
    assert optics.diffraction_efficiency(500e3, NO_JITTER) == pytest.approx(
        0.1987223798347848, rel=1e-9
    )


def test_diffraction_matches_2d_quadrature_oracle():
    w0 = optics.beam_waist_m(780e-9, 3e-6)
    for z in (5e5, 2e6, 1e7):
        width = optics.beam_width_m(w0, 3e-6, z)
        want = oracles.diffraction_efficiency_2d(width, 1e-6 * z, 0.5)
        assert optics.diffraction_efficiency(z, BASE) == pytest.approx(want, rel=1e-8)


def test_pointing_error_strictly_reduces_efficiency():
    for z in (1e5, 1e6, 1e7):
        assert optics.diffraction_efficiency(z, BASE) < optics.diffraction_efficiency(
            z, NO_JITTER
        )


def test_diffraction_monotonicity_grids():
    distances = np.logspace(5, 7.5, 12)
    values = [optics.diffraction_efficiency(z, BASE) for z in distances]
    assert all(b < a for a, b in zip(values, values[1:]))

    sigmas = [0.0, 0.5e-6, 1e-6, 2e-6, 4e-6]
    by_sigma = [
        optics.diffraction_efficiency(1e6, OpticalParams(pointing_error_rad=s))
        for s in sigmas
    ]
    assert all(b < a for a, b in zip(by_sigma, by_sigma[1:]))

    thetas = [2e-6, 3e-6, 4e-6, 6e-6, 8e-6]
    by_theta = [
        optics.diffraction_efficiency(1e6, OpticalParams(divergence_half_angle_rad=t))
        for t in thetas
    ]
    assert all(b < a for a, b in zip(by_theta, by_theta[1:]))

    radii = [0.25, 0.5, 0.75, 1.0]
    by_radius = [
        optics.diffraction_efficiency(1e6, OpticalParams(receiver_radius_m=r))
        for r in radii
    ]
    assert all(b > a for a, b in zip(by_radius, by_radius[1:]))


def test_excess_pointing_loss_flattens_at_long_range():
    def excess_db(z: float) -> float:
        ratio = optics.diffraction_efficiency(z, BASE) / optics.diffraction_efficiency(
            z, NO_JITTER
        )
        return -10.0 * math.log10(ratio)

    near, far = excess_db(2e7), excess_db(4e7)
    assert abs(far - near) / near < 0.02


def test_atmospheric_efficiency():
    assert optics.atmospheric_efficiency(math.pi / 2, 0.8) == pytest.approx(0.8)
    assert optics.atmospheric_efficiency(math.pi / 6, 0.8) == pytest.approx(0.64)
    assert optics.atmospheric_efficiency(1e-4, 0.8) == pytest.approx(0.0, abs=1e-12)
    assert optics.atmospheric_efficiency(0.0, 0.8) == 0.0
    assert optics.atmospheric_efficiency(-0.3, 0.8) == 0.0


def test_background_rate_values():
    # frozen from direct evaluation: k=1e-7, R=0.5 m, 780 nm, 1 us window
    rate, prob = optics.background_rate(BG, 0.5)
    assert rate == pytest.approx(0.29050837326428275, rel=1e-9)
    assert prob == pytest.approx(2.9050833105781493e-07, rel=1e-9)
    # same order of magnitude as the dark-count probability
    assert 1e-7 <= prob <= 1e-6


def test_background_rate_scaling():
    dark = BackgroundParams(weather_factor=1e-7)
    moon = BackgroundParams(weather_factor=1e-5)
    r1, _ = optics.background_rate(dark, 0.5)
    r2, _ = optics.background_rate(moon, 0.5)
    assert r2 == pytest.approx(100.0 * r1, rel=1e-12)


def test_background_zero_weather_rejected_only_when_negative():
    with pytest.raises(ValueError):
        BackgroundParams(weather_factor=-0.1)


def test_effective_click_values():
    eta_eff, alpha = optics.effective_click(0.5, 1e-6)
    assert eta_eff == pytest.approx(0.5000009999995001, rel=1e-12)
    assert alpha == pytest.approx(0.9999970000069998, rel=1e-12)

    eta_eff, alpha = optics.effective_click(0.0, 1e-6)
    assert eta_eff == pytest.approx(2e-6, rel=1e-3)
    assert alpha == 0.0

    eta_eff, alpha = optics.effective_click(0.3, 0.0)
    assert eta_eff == 0.3
    assert alpha == 1.0


def test_effective_click_invariants():
    rng = np.random.default_rng(3)
    for _ in range(200):
        eta = rng.uniform(0.0, 1.0)
        noise = rng.uniform(1e-9, 0.5)
        eta_eff, alpha = optics.effective_click(eta, noise)
        assert eta_eff >= eta
        assert alpha * eta_eff == pytest.approx(eta * (1.0 - noise), rel=1e-12)


def test_effective_click_zero_error():
    with pytest.raises(ValueError):
        optics.effective_click(0.0, 0.0)


def test_intersat_budget_has_unit_atmosphere():
    budget = optics.intersat_link_budget(2000.0, BASE, emissive_memory=True)
    assert budget.atmosphere == 1.0
    assert budget.noise_click_prob == 0.0
    assert budget.devices == pytest.approx(0.8 * 0.8)


def test_ground_budget_zenith_closed_form():
    # sigma_p = 0 so the diffraction factor has a closed form
    budget = optics.ground_link_budget(
        400.0, math.pi / 2, NO_JITTER, BG, emissive_memory=False
    )
    w0 = optics.beam_waist_m(780e-9, 3e-6)
    width = optics.beam_width_m(w0, 3e-6, 400e3)
    expected = 0.7 * 0.8 * (1.0 - math.exp(-2 * 0.25 / width**2))
    assert budget.efficiency == pytest.approx(expected, rel=1e-9)


def test_budget_product_is_exact():
    budget = optics.ground_link_budget(700.0, 0.6, BASE, BG, emissive_memory=True)
    assert budget.efficiency == budget.diffraction * budget.atmosphere * budget.devices


def test_source_path_budget_composition():
    path = optics.source_path_budget(400.0, math.pi / 2, 2326.5, BASE, BG)
    assert path.efficiency == pytest.approx(
        path.ground_arm.efficiency * path.memory_arm.efficiency
    )
    assert path.memory_arm.devices == pytest.approx(0.8)
    assert path.ground_arm.devices == pytest.approx(0.7)


def test_source_path_loss_crossover_favors_zero_offset_at_range():
    # total loss of the A..S_C path: at short range an inward S_A placement
    # wins, at long range avoiding the slant atmosphere wins
    from maqkd import geometry

    def loss_db(distance_km: float, fraction: float) -> float:
        layout = geometry.GroundTrackLayout(
            distance_km, 400.0, (fraction, 0.5, 1.0 - fraction)
        )
        nodes = geometry.node_positions(layout)
        return optics.source_path_budget(
            geometry.pair_distance_km(nodes.ground_a, nodes.sat_a),
            geometry.elevation_from_positions(nodes.ground_a, nodes.sat_a),
            geometry.pair_distance_km(nodes.sat_a, nodes.sat_c),
            BASE,
            BG,
        ).loss_db

    assert loss_db(1000.0, 0.2) < loss_db(1000.0, 0.0)
    for distance in (4400.0, 6000.0, 8000.0):
        assert loss_db(distance, 0.0) < loss_db(distance, 0.1) < loss_db(distance, 0.2)


def test_link_budget_dispatch():
    ground = optics.link_budget(
        LinkClass.GROUND_SAT, BASE, BG, ground_distance_km=500.0,
        ground_elevation_rad=1.0, emissive_memory=True,
    )
    assert isinstance(ground, optics.LinkBudget)
    sat = optics.link_budget(
        LinkClass.SAT_SAT, BASE, BG, intersat_distance_km=1500.0,
        emissive_memory=True,
    )
    assert sat.atmosphere == 1.0
    path = optics.link_budget(
        LinkClass.GROUND_SAT_SAT, BASE, BG, ground_distance_km=500.0,
        ground_elevation_rad=1.0, intersat_distance_km=1500.0,
    )
    assert isinstance(path, optics.SourcePathBudget)


def test_params_validation():
    with pytest.raises(ValueError):
        OpticalParams(divergence_half_angle_rad=-1.0)
    with pytest.raises(ValueError):
        OpticalParams(detector_efficiency=1.5)
    with pytest.raises(ValueError):
        optics.diffraction_efficiency(0.0, BASE)
