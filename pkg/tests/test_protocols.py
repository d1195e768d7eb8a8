import math

import numpy as np
import pytest

from maqkd import protocols, simcore
from maqkd.errors import VisibilityError
from maqkd.geometry import GroundTrackLayout
from maqkd.optics import BackgroundParams, OpticalParams
from maqkd.protocols import (
    ChainLink,
    ChainProtocol,
    ChainSetup,
    ProtocolConfig,
    Scenario1Protocol,
    Scenario1Setup,
    Scenario1Side,
    apply_cutoff,
    build_one_sat_memory,
    build_scenario1,
    build_scenario2,
    memory_wait_s,
    one_sat_baseline_rate,
    run_chain,
    run_scenario1,
)
from maqkd.quantum import error_rates

import oracles

C_KM_S = 299792.458

LAYOUT_4400 = GroundTrackLayout(4400.0, 400.0, (0.0, 0.5, 1.0))
LAYOUT_2000 = GroundTrackLayout(2000.0, 400.0, (0.0, 0.5, 1.0))
OPTICS = OpticalParams()
BG = BackgroundParams()
QUIET_OPTICS = OpticalParams(dark_count_prob=0.0)
QUIET_BG = BackgroundParams(weather_factor=1e-30)


def pure_side(**overrides) -> Scenario1Side:
    params = dict(
        loading_prob=1.0,
        ground_prob=1.0,
        ground_alpha=1.0,
        memory_wait_s=1e-3,
        slot_period_s=5e-8,
        dephasing_time_s=0.1,
    )
    params.update(overrides)
    return Scenario1Side(**params)


# --- timing formulas --------------------------------------------------------


def test_memory_wait_symmetric_placement():
    # source equidistant from ground and memory: wait is the ground-memory delay
    assert memory_wait_s(1000.0, 1000.0, 1500.0) == pytest.approx(
        1500.0 / C_KM_S, rel=1e-9
    )
    assert memory_wait_s(0.0, 0.0, 0.0) == 0.0


def test_memory_wait_from_geometry_oracle():
    # layout S_A @ 0%, d = 4400 km, h = 400 km, distances from the 3-D oracle
    ground = oracles.chord_ground_to_sat(0.0, 400.0)
    intersat = oracles.chord_sat_to_sat(0.0, 2200.0, 400.0)
    ground_mem = oracles.chord_ground_to_sat(2200.0, 400.0)
    want = (ground - intersat + ground_mem) * 1e3 / 299792458.0
    setup = build_scenario1(LAYOUT_4400, OPTICS, BG, ProtocolConfig())
    assert setup.side_a.memory_wait_s == pytest.approx(want, rel=1e-12)


def test_memory_wait_rejects_violated_geometry():
    with pytest.raises(ValueError):
        memory_wait_s(100.0, 5000.0, 100.0)


def test_apply_cutoff_boundary():
    assert apply_cutoff(confirmed_time=1.0, now=1.5, cutoff_s=0.5)  # exactly t_cut
    assert not apply_cutoff(confirmed_time=1.0, now=1.6, cutoff_s=0.5)
    assert apply_cutoff(confirmed_time=1.0, now=2.0, cutoff_s=math.inf)


# --- Scenario 1 -------------------------------------------------------------


def test_scenario1_degenerate_timing():
    side = pure_side()
    setup = Scenario1Setup(side, side, 1, math.inf, completion_delay_s=2e-3)
    records = run_scenario1(setup, 5, seed=1)
    cycle = 1e-3 + 5e-8  # memory wait + one source slot
    for k, record in enumerate(records, start=1):
        assert record.time_s == pytest.approx(k * cycle + 2e-3, rel=1e-12)


def test_scenario1_degenerate_state():
    # each swapped pair carries exactly the two memory-wait dephasings
    side = pure_side()
    setup = Scenario1Setup(side, side, 1, math.inf, completion_delay_s=0.0)
    records = run_scenario1(setup, 3, seed=1)
    lam = (1.0 - math.exp(-1e-3 / 0.1)) / 2.0
    expected_ex = 2.0 * lam * (1.0 - lam)
    for record in records:
        e_x, e_z = error_rates(record.state)
        assert e_x == pytest.approx(expected_ex, rel=1e-12)
        assert e_z == 0.0


@pytest.mark.slow
def test_scenario1_mean_establishment_matches_formula():
    # one mode: elapsed = j * t_mem + (sum of j geometric loads) * T_p
    side = pure_side(loading_prob=0.3, ground_prob=0.25)
    setup = Scenario1Setup(side, side, 1, math.inf, completion_delay_s=0.0)
    protocol = Scenario1Protocol(setup, collect_stats=True)
    simcore.run(protocol, 20_000, master_seed=7)
    elapsed = np.array([e for s, e in protocol.establishment_log if s == 0])
    expected = (1e-3 + 5e-8 / 0.3) / 0.25
    sigma = elapsed.std(ddof=1) / math.sqrt(len(elapsed))
    assert abs(elapsed.mean() - expected) < 3.0 * sigma


def test_scenario1_cutoff_discards_and_restarts():
    # side B far slower than side A: with a tight cutoff, A pairs get discarded
    fast = pure_side(ground_prob=1.0)
    slow = pure_side(ground_prob=0.01)
    setup = Scenario1Setup(fast, slow, 1, cutoff_s=0.5e-3, completion_delay_s=0.0)
    records = run_scenario1(setup, 50, seed=3)
    assert len(records) == 50
    # every delivered A-side qubit waited at most t_mem + cutoff in memory
    lam_max = (1.0 - math.exp(-(1e-3 + 0.5e-3) / 0.1)) / 2.0
    for record in records:
        e_x, _ = error_rates(record.state)
        assert e_x <= 2.0 * lam_max + 1e-12


def test_scenario1_infinite_cutoff_equals_huge_cutoff():
    side = pure_side(ground_prob=0.2, loading_prob=0.5)
    no_cut = Scenario1Setup(side, side, 4, math.inf, 0.0)
    huge_cut = Scenario1Setup(side, side, 4, 1e6, 0.0)
    assert run_scenario1(no_cut, 200, seed=9) == run_scenario1(huge_cut, 200, seed=9)


def test_scenario1_determinism():
    setup = build_scenario1(
        LAYOUT_4400, OPTICS, BG, ProtocolConfig(n_modes=20, cutoff_s=0.05)
    )
    a = run_scenario1(setup, 300, seed=42)
    b = run_scenario1(setup, 300, seed=42)
    assert a == b
    c = run_scenario1(setup, 300, seed=43)
    assert a != c


def test_scenario1_lazy_eager_equivalence():
    setup = build_scenario1(
        LAYOUT_4400, OPTICS, BG, ProtocolConfig(n_modes=10, cutoff_s=0.05)
    )
    lazy = run_scenario1(setup, 100, seed=5)
    eager = run_scenario1(setup, 100, seed=5, eager_updates=True)
    for a, b in zip(lazy, eager):
        assert a.time_s == b.time_s
        assert np.allclose(a.state, b.state, atol=1e-9)


def test_scenario1_record_times_increase():
    setup = build_scenario1(
        LAYOUT_4400, OPTICS, BG, ProtocolConfig(n_modes=16, cutoff_s=0.05)
    )
    records = run_scenario1(setup, 400, seed=11)
    times = [r.time_s for r in records]
    assert times == sorted(times)


# --- chain protocol ---------------------------------------------------------


def symmetric_one_sat_setup(
    p: float = 1.0, trial: float = 2e-3, cutoff: float = math.inf, modes: int = 1
) -> ChainSetup:
    links = (
        ChainLink(0, 1, 1, p, 1.0, trial, 0.1, receiver_is_memory=False),
        ChainLink(1, 2, 1, p, 1.0, trial, 0.1, receiver_is_memory=False),
    )
    delay = trial / 4.0  # node 1 to each ground
    return ChainSetup(
        links=links,
        n_modes=modes,
        cutoff_s=cutoff,
        delays_to_a_s=(0.0, delay, 2 * delay),
        delays_to_b_s=(2 * delay, delay, 0.0),
    )


def test_chain_degenerate_pipeline():
    # perfect links, one mode: swap every round trip, announced one leg later
    setup = symmetric_one_sat_setup()
    records = run_chain(setup, 4, seed=3)
    for k, record in enumerate(records, start=1):
        assert record.time_s == pytest.approx(k * 2e-3 + 0.5e-3, rel=1e-12)
    lam = (1.0 - math.exp(-2e-3 / 0.1)) / 2.0
    e_x, e_z = error_rates(records[0].state)
    assert e_x == pytest.approx(2.0 * lam * (1.0 - lam), rel=1e-12)
    assert e_z == 0.0


@pytest.mark.slow
def test_chain_mean_establishment_matches_geometric():
    setup = symmetric_one_sat_setup(p=0.05, cutoff=math.inf, modes=2)
    protocol = ChainProtocol(setup, collect_stats=True)
    simcore.run(protocol, 4_000, master_seed=13)
    elapsed = np.array([e for link, e in protocol.establishment_log if link == 0])
    expected = 2e-3 / 0.05
    sigma = elapsed.std(ddof=1) / math.sqrt(len(elapsed))
    assert abs(elapsed.mean() - expected) < 3.0 * sigma


def test_chain_oldest_first_selection():
    # two left qubits stored at different times; the older one must be consumed
    setup = symmetric_one_sat_setup(modes=2)
    protocol = ChainProtocol(setup)
    world = simcore.World(0)
    protocol.bootstrap(world)

    def make_pair(link_idx, line_idx, stored_time):
        link = setup.links[link_idx]
        qubit = simcore.StoredQubit(
            node=1,
            dephasing_time_s=0.1,
            stored_time=stored_time,
            eligible_time=stored_time,
            eligible=True,
            tag=(link_idx, line_idx),
        )
        ground_is_lower = link_idx == 0
        pair = simcore.Pair(
            state=protocols.PHI_PLUS,
            left=None if ground_is_lower else qubit,
            right=qubit if ground_is_lower else None,
            confirmed_time=stored_time,
            known_left=stored_time if ground_is_lower else -math.inf,
            known_right=-math.inf if ground_is_lower else stored_time,
        )
        qubit.pair = pair
        line = protocol.lines[link_idx][line_idx]
        line.pending = False
        line.emitter_qubit = qubit
        side = 0 if link_idx == 0 else 1
        protocol.banks[(1, side)][(link_idx, line_idx)] = qubit
        return qubit

    world.clock = 1.0
    older = make_pair(0, 0, stored_time=0.2)
    newer = make_pair(0, 1, stored_time=0.7)
    make_pair(1, 0, stored_time=0.9)
    protocol._swap_check(world, 1)
    assert not older.alive  # oldest consumed by the swap
    assert newer.alive
    assert len(world.records) == 1


def test_chain_cutoff_bounds_waiting():
    # left link much faster than right: stale left qubits must be discarded
    links = (
        ChainLink(0, 1, 1, 1.0, 1.0, 1e-3, 0.1, receiver_is_memory=False),
        ChainLink(1, 2, 1, 0.02, 1.0, 1e-3, 0.1, receiver_is_memory=False),
    )
    setup = ChainSetup(links, 1, cutoff_s=2e-3, delays_to_a_s=(0, 0, 0),
                       delays_to_b_s=(0, 0, 0))
    records = run_chain(setup, 100, seed=21)
    # storage of the left qubit is bounded by one trial + cutoff
    lam_left = (1.0 - math.exp(-(1e-3 + 2e-3) / 0.1)) / 2.0
    lam_right = (1.0 - math.exp(-1e-3 / 0.1)) / 2.0
    bound = (1.0 - (1.0 - 2 * lam_left) * (1.0 - 2 * lam_right)) / 2.0
    for record in records:
        e_x, _ = error_rates(record.state)
        assert e_x <= bound + 1e-12


def test_chain_determinism_and_eager_equivalence():
    setup = build_scenario2(
        LAYOUT_2000, OPTICS, BG, ProtocolConfig(n_modes=25, cutoff_s=0.02)
    )
    a = run_chain(setup, 150, seed=8)
    b = run_chain(setup, 150, seed=8)
    assert a == b
    eager = run_chain(setup, 150, seed=8, eager_updates=True)
    for x, y in zip(a, eager):
        assert x.time_s == y.time_s
        assert np.allclose(x.state, y.state, atol=1e-9)


def test_scenario2_intersat_dephasing_split():
    # at the intersat confirmation the emitter qubit has dephased one full
    # trial, the stored receiver qubit half of one
    never = 1e-12  # outer links effectively never fire
    links = (
        ChainLink(0, 1, 1, never, 1.0, 1e-3, 0.1, receiver_is_memory=False),
        ChainLink(1, 2, 1, 1.0, 1.0, 10e-3, 0.1, receiver_is_memory=True,
                  receiver_dephasing_s=0.1),
        ChainLink(2, 3, 2, never, 1.0, 1e-3, 0.1, receiver_is_memory=False),
    )
    setup = ChainSetup(links, 1, math.inf, (0, 0, 0, 0), (0, 0, 0, 0))
    protocol = ChainProtocol(setup)
    world = simcore.World(0)
    protocol.bootstrap(world)
    for _ in range(2):  # stored at trial/2, confirmed at trial
        event = world.resolve_next()
        protocol.handle(world, event)
    assert world.clock == pytest.approx(10e-3)
    (pair,) = protocol.live_pairs()
    simcore.lazy_update(pair, world.clock)
    from maqkd.quantum import PHI_PLUS, dephase

    want = dephase(dephase(PHI_PLUS, 10e-3, 0.1), 5e-3, 0.1)
    assert np.allclose(pair.state, want, atol=1e-15)


def test_noise_free_purity_all_protocols():
    config = ProtocolConfig(n_modes=50, cutoff_s=0.05)
    s1 = build_scenario1(LAYOUT_2000, QUIET_OPTICS, QUIET_BG, config)
    for record in run_scenario1(s1, 200, seed=17):
        assert error_rates(record.state)[1] == 0.0
    s2 = build_scenario2(LAYOUT_2000, QUIET_OPTICS, QUIET_BG, config)
    for record in run_chain(s2, 200, seed=17):
        assert error_rates(record.state)[1] == 0.0
    one = build_one_sat_memory(LAYOUT_2000, QUIET_OPTICS, QUIET_BG, config)
    for record in run_chain(one, 200, seed=17):
        assert error_rates(record.state)[1] == 0.0


# --- builders and baseline --------------------------------------------------


def test_build_scenario1_link_parameters():
    setup = build_scenario1(LAYOUT_4400, OPTICS, BG, ProtocolConfig(n_modes=100))
    side = setup.side_a
    assert side.slot_period_s == pytest.approx(100 / 20e6)
    # ground arm: zenith link over 400 km; loading arm: 2326.5 km chord
    assert side.ground_prob == pytest.approx(0.1193, abs=2e-4)
    assert side.loading_prob == pytest.approx(0.00566, abs=1e-4)
    assert setup.side_b == side  # symmetric layout


def test_build_scenario2_structure():
    setup = build_scenario2(LAYOUT_4400, OPTICS, BG, ProtocolConfig(n_modes=10))
    assert len(setup.links) == 4
    assert [link.emitter_node for link in setup.links] == [1, 1, 3, 3]
    assert [link.receiver_is_memory for link in setup.links] == [
        False, True, True, False,
    ]
    # emissive memory on the ground links: eta_mem * eta_det * eta_atm * eta_dif
    ground, intersat = setup.links[0], setup.links[1]
    assert ground.alpha < 1.0
    assert intersat.alpha == 1.0
    assert intersat.success_prob < ground.success_prob


def test_one_sat_visibility_error():
    wide = GroundTrackLayout(6000.0, 400.0, (0.0, 0.5, 1.0))
    with pytest.raises(VisibilityError):
        build_one_sat_memory(wide, OPTICS, BG, ProtocolConfig())
    with pytest.raises(VisibilityError):
        one_sat_baseline_rate(wide, OPTICS, BG, ProtocolConfig())


def test_one_sat_baseline_product_form():
    rate = one_sat_baseline_rate(LAYOUT_2000, OPTICS, BG, ProtocolConfig())
    from maqkd import geometry, optics

    nodes = geometry.node_positions(LAYOUT_2000)
    arm = optics.ground_link_budget(
        geometry.pair_distance_km(nodes.ground_a, nodes.sat_c),
        geometry.elevation_from_positions(nodes.ground_a, nodes.sat_c),
        OPTICS,
        BG,
        emissive_memory=False,
    )
    assert rate == pytest.approx(20e6 * arm.efficiency**2, rel=1e-12)


def test_one_sat_memory_rate_drops_with_height():
    config = ProtocolConfig(n_modes=50, cutoff_s=0.02)
    results = {}
    for h in (400.0, 2000.0):
        layout = GroundTrackLayout(2000.0, h, (0.0, 0.5, 1.0))
        setup = build_one_sat_memory(layout, OPTICS, BG, config)
        records = run_chain(setup, 400, seed=29)
        results[h] = len(records) / records[-1].time_s
    assert results[400.0] > 2.0 * results[2000.0]


def test_protocol_config_validation():
    with pytest.raises(ValueError):
        ProtocolConfig(scenario="nope")
    with pytest.raises(ValueError):
        ProtocolConfig(n_modes=0)
    with pytest.raises(ValueError):
        ProtocolConfig(cutoff_s=0.0)
    assert ProtocolConfig(cutoff_s=None).cutoff_or_inf == math.inf
