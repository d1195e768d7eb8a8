import math

import numpy as np
import pytest

from maqkd import quantum
from maqkd.quantum import FULLY_MIXED, PHI_PLUS, BellDiagonalState

import oracles


def random_state(rng) -> BellDiagonalState:
    weights = rng.dirichlet(np.ones(4))
    return BellDiagonalState(*map(float, weights))


def test_dephase_identity_at_zero_time():
    state = BellDiagonalState(0.7, 0.1, 0.15, 0.05)
    assert quantum.dephase(state, 0.0, 0.1) == state


def test_dephase_long_time_limit():
    state = quantum.dephase(PHI_PLUS, 1e9, 1.0)
    assert state.phi_plus == pytest.approx(0.5, abs=1e-12)
    assert state.phi_minus == pytest.approx(0.5, abs=1e-12)
    assert state.psi_plus == 0.0
    assert state.psi_minus == 0.0


def test_dephase_half_weight_at_ln2():
    # lambda = 1/4 exactly when t = T_dp * ln 2
    state = quantum.dephase(PHI_PLUS, math.log(2.0), 1.0)
    assert state.phi_plus == pytest.approx(0.75, rel=1e-12)
    assert state.phi_minus == pytest.approx(0.25, rel=1e-12)


def test_dephase_semigroup_property():
    rng = np.random.default_rng(11)
    for _ in range(300):
        state = random_state(rng)
        t1, t2 = rng.uniform(0.0, 5.0, size=2)
        t_dp = rng.uniform(0.01, 2.0)
        two_step = quantum.dephase(quantum.dephase(state, t1, t_dp), t2, t_dp)
        one_step = quantum.dephase(state, t1 + t2, t_dp)
        assert np.allclose(two_step, one_step, atol=1e-12)


def test_white_noise_endpoints():
    state = BellDiagonalState(0.6, 0.2, 0.1, 0.1)
    assert quantum.white_noise(state, 1.0) == state
    assert quantum.white_noise(state, 0.0) == FULLY_MIXED


def test_white_noise_example():
    state = quantum.white_noise(PHI_PLUS, 0.9)
    assert state == pytest.approx((0.925, 0.025, 0.025, 0.025))


def test_swap_perfect_pairs():
    assert quantum.swap(PHI_PLUS, PHI_PLUS) == PHI_PLUS


def test_swap_dephased_pairs():
    # frozen from the 16x16 dense oracle: (0.9,0.1,0,0) x (0.9,0.1,0,0)
    a = BellDiagonalState(0.9, 0.1, 0.0, 0.0)
    result = quantum.swap(a, a)
    assert result == pytest.approx((0.82, 0.18, 0.0, 0.0), abs=1e-15)


def test_swap_absorbing_mixed_state():
    rng = np.random.default_rng(5)
    for _ in range(50):
        state = random_state(rng)
        assert quantum.swap(FULLY_MIXED, state) == pytest.approx(
            tuple(FULLY_MIXED), abs=1e-12
        )


def test_error_rates_examples():
    assert quantum.error_rates(PHI_PLUS) == (0.0, 0.0)
    assert quantum.error_rates(FULLY_MIXED) == (0.5, 0.5)
    e_x, e_z = quantum.error_rates(BellDiagonalState(0.82, 0.18, 0.0, 0.0))
    assert e_x == pytest.approx(0.18)
    assert e_z == 0.0


def test_channels_preserve_normalization_and_positivity():
    rng = np.random.default_rng(23)
    for _ in range(500):
        state = random_state(rng)
        state = quantum.dephase(state, rng.uniform(0, 3), rng.uniform(0.01, 2))
        state = quantum.white_noise(state, rng.uniform(0, 1))
        other = random_state(rng)
        state = quantum.swap(state, other)
        assert min(state) >= 0.0
        assert sum(state) == pytest.approx(1.0, abs=1e-12)
        state.validate(tol=1e-12)


def test_dephase_matches_dense_oracle():
    rng = np.random.default_rng(31)
    for _ in range(1000):
        state = random_state(rng)
        t = rng.uniform(0.0, 4.0)
        t_dp = rng.uniform(0.05, 2.0)
        lam = -math.expm1(-t / t_dp) / 2.0
        qubit = int(rng.integers(0, 2))
        rho = oracles.dephase_dense(oracles.bell_probs_to_density(state), qubit, lam)
        want = oracles.density_to_bell_probs(rho)
        got = quantum.dephase(state, t, t_dp)
        assert np.allclose(got, want, atol=1e-10)


def test_white_noise_matches_dense_oracle():
    rng = np.random.default_rng(37)
    for _ in range(1000):
        state = random_state(rng)
        alpha = float(rng.uniform(0.0, 1.0))
        qubit = int(rng.integers(0, 2))
        rho = oracles.white_noise_dense(
            oracles.bell_probs_to_density(state), qubit, alpha
        )
        want = oracles.density_to_bell_probs(rho)
        got = quantum.white_noise(state, alpha)
        assert np.allclose(got, want, atol=1e-10)


def test_swap_matches_dense_oracle():
    rng = np.random.default_rng(41)
    for _ in range(1000):
        a, b = random_state(rng), random_state(rng)
        want = oracles.swap_dense(a, b)
        got = quantum.swap(a, b)
        assert np.allclose(got, want, atol=1e-10)


def test_error_rates_match_measurement_oracle():
    rng = np.random.default_rng(43)
    for _ in range(1000):
        state = random_state(rng)
        rho = oracles.bell_probs_to_density(state)
        want_x, want_z = oracles.measurement_error_rates(rho)
        got_x, got_z = quantum.error_rates(state)
        assert got_x == pytest.approx(want_x, abs=1e-10)
        assert got_z == pytest.approx(want_z, abs=1e-10)


def test_swap_is_associative():
    rng = np.random.default_rng(47)
    for _ in range(300):
        a, b, c = (random_state(rng) for _ in range(3))
        left = quantum.swap(quantum.swap(a, b), c)
        right = quantum.swap(a, quantum.swap(b, c))
        assert np.allclose(left, right, atol=1e-12)


def test_swap_commutes_with_dephasing_on_outer_qubit():
    rng = np.random.default_rng(53)
    for _ in range(300):
        a, b = random_state(rng), random_state(rng)
        t = rng.uniform(0.0, 2.0)
        t_dp = rng.uniform(0.05, 1.0)
        before = quantum.swap(quantum.dephase(a, t, t_dp), b)
        after = quantum.dephase(quantum.swap(a, b), t, t_dp)
        assert np.allclose(before, after, atol=1e-12)


def test_validation_errors():
    with pytest.raises(ValueError):
        BellDiagonalState(0.5, 0.5, 0.5, -0.5).validate()
    with pytest.raises(ValueError):
        quantum.dephase(PHI_PLUS, -1.0, 1.0)
    with pytest.raises(ValueError):
        quantum.dephase(PHI_PLUS, 1.0, 0.0)
    with pytest.raises(ValueError):
        quantum.white_noise(PHI_PLUS, 1.2)
