"""Repeater protocol state machines.

Four schemes are implemented on top of the event engine:

* Scenario 1 -- pair sources on the outer satellites fire continuously at the
  clock rate; only the central satellite stores qubits (two absorptive
  multi-mode banks) and swaps once both sides hold confirmed pairs.
* Scenario 2 -- four links, emissive memories on the outer satellites,
  absorptive ones on the central satellite; every satellite swaps as soon as
  it holds confirmed qubits on both sides, oldest first.
* One satellite with memory -- the two-link reduction of Scenario 2.
* One satellite without memory -- a closed-form coincidence-rate baseline.

The cutoff policy discards a stored qubit (and with it the pair it currently
belongs to) once it has sat in memory longer than ``cutoff_s`` after its link
was confirmed at its own station; swapping elsewhere never resets the timer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import geometry, optics
from .errors import VisibilityError
from .geometry import GeometryConfig, GroundTrackLayout, DEFAULT_GEOMETRY
from .quantum import PHI_PLUS, swap, white_noise
from .simcore import (
    Pair,
    Protocol,
    SampleRecord,
    SimEvent,
    StoredQubit,
    World,
    lazy_update,
    run,
    sample_geometric,
)


@dataclass(frozen=True)
class ProtocolConfig:
    """Knobs common to all protocols."""

    scenario: str = "scenario1"
    clock_rate_hz: float = 20e6
    n_modes: int = 1000
    cutoff_s: float | None = 0.05
    dephasing_time_s: float = 0.1

    def __post_init__(self) -> None:
        if self.scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario: {self.scenario}")
        if not self.clock_rate_hz > 0:
            raise ValueError("clock_rate_hz must be strictly positive")
        if self.n_modes < 1:
            raise ValueError("n_modes must be at least 1")
        if self.cutoff_s is not None and not self.cutoff_s > 0:
            raise ValueError("cutoff_s must be strictly positive or None")
        if not self.dephasing_time_s > 0:
            raise ValueError("dephasing_time_s must be strictly positive")

    @property
    def cutoff_or_inf(self) -> float:
        return math.inf if self.cutoff_s is None else self.cutoff_s


def memory_wait_s(
    source_to_ground_km: float,
    source_to_memory_km: float,
    ground_to_memory_km: float,
    geometry_cfg: GeometryConfig = DEFAULT_GEOMETRY,
) -> float:
    """Delay between loading a qubit and hearing whether its twin arrived.

    The twin leaves the source together with the stored photon, travels to
    the ground station, and the detection outcome is messaged back to the
    memory satellite.
    """
    for distance in (source_to_ground_km, source_to_memory_km, ground_to_memory_km):
        if distance < 0:
            raise ValueError("distances must be nonnegative")
    wait = (
        source_to_ground_km - source_to_memory_km + ground_to_memory_km
    ) * 1e3 / geometry_cfg.speed_of_light_m_s
    if wait < 0:
        raise ValueError("negative memory wait; geometry violated")
    return wait


def apply_cutoff(confirmed_time: float, now: float, cutoff_s: float) -> bool:
    """Return True when the pair may be kept (strictly-greater discard rule)."""
    return not now - confirmed_time > cutoff_s


# --- Scenario 1 -------------------------------------------------------------


@dataclass(frozen=True)
class Scenario1Side:
    """Resolved parameters of one repeater link of Scenario 1."""

    loading_prob: float          # photon stored at the central memory, per slot
    ground_prob: float           # detection confirmed at the ground, per round
    ground_alpha: float          # genuine-click fraction at the ground detector
    memory_wait_s: float         # loading -> confirmation message delay
    slot_period_s: float         # n / f_clock, one slot per mode per cycle
    dephasing_time_s: float

    def __post_init__(self) -> None:
        if not 0.0 < self.loading_prob <= 1.0:
            raise ValueError("loading_prob must lie in (0, 1]")
        if not 0.0 < self.ground_prob <= 1.0:
            raise ValueError("ground_prob must lie in (0, 1]")


@dataclass(frozen=True)
class Scenario1Setup:
    side_a: Scenario1Side
    side_b: Scenario1Side
    n_modes: int
    cutoff_s: float              # math.inf disables the cutoff
    completion_delay_s: float    # swap announcement to the farther ground station


class Scenario1Protocol(Protocol):
    """Two repeater links, storage only at the central satellite.

    Each memory mode owns every n-th source slot; the time to fill it and get
    the ground confirmation is sampled in one shot as j rounds of (geometric
    loading + fixed wait), so failed rounds cost no events.
    """

    def __init__(self, setup: Scenario1Setup, collect_stats: bool = False):
        self.setup = setup
        self.sides = (setup.side_a, setup.side_b)
        self.banks: tuple[dict[int, Pair], dict[int, Pair]] = ({}, {})
        self.collect_stats = collect_stats
        self.establishment_log: list[tuple[int, float]] = []
        self._streams = []
        self._live: set[int] = set()
        self._pairs: dict[int, Pair] = {}

    # -- engine interface

    def bootstrap(self, world: World) -> None:
        n = self.setup.n_modes
        self._streams = world.spawn_streams(2 * n)
        for side in (0, 1):
            for mode in range(n):
                self._start_mode(world, side, mode)

    def handle(self, world: World, event: SimEvent) -> None:
        if event.kind == "confirm":
            self._on_confirm(world, event)
        elif event.kind == "discard":
            self._on_discard(world, event)
        else:
            raise ValueError(f"unexpected event kind {event.kind}")

    def live_pairs(self):
        return list(self._pairs.values())

    # -- handlers

    def _start_mode(self, world: World, side: int, mode: int) -> None:
        params = self.sides[side]
        rng = self._streams[side * self.setup.n_modes + mode]
        rounds = sample_geometric(params.ground_prob, rng)
        slots = rounds
        if params.loading_prob < 1.0:
            slots += int(rng.negative_binomial(rounds, params.loading_prob))
        elapsed = rounds * params.memory_wait_s + slots * params.slot_period_s
        world.queue.schedule(world.clock + elapsed, "confirm", (side, mode, elapsed))

    def _on_confirm(self, world: World, event: SimEvent) -> None:
        side, mode, elapsed = event.payload
        params = self.sides[side]
        now = world.clock
        if self.collect_stats:
            self.establishment_log.append((side, elapsed))
        qubit = StoredQubit(
            node=0,
            dephasing_time_s=params.dephasing_time_s,
            stored_time=now - params.memory_wait_s,
            eligible_time=now,
            eligible=True,
            tag=(side, mode),
        )
        pair = Pair(
            state=white_noise(PHI_PLUS, params.ground_alpha),
            left=None,
            right=qubit,
            confirmed_time=now,
        )
        qubit.pair = pair
        self.banks[side][mode] = pair
        self._pairs[id(pair)] = pair
        if math.isfinite(self.setup.cutoff_s):
            world.queue.schedule(
                now + self.setup.cutoff_s, "discard", (side, mode, pair)
            )
        self._try_swap(world, side, mode, pair)

    def _try_swap(self, world: World, side: int, mode: int, pair: Pair) -> None:
        other = 1 - side
        bank = self.banks[other]
        if not bank:
            return
        partner_mode = min(
            bank, key=lambda m: (bank[m].confirmed_time, m)
        )
        partner = bank.pop(partner_mode)
        del self.banks[side][mode]
        now = world.clock
        lazy_update(pair, now)
        lazy_update(partner, now)
        state = swap(pair.state, partner.state)
        for dying in (pair, partner):
            dying.alive = False
            dying.right.alive = False
            self._pairs.pop(id(dying), None)
        world.emit(SampleRecord(now + self.setup.completion_delay_s, state))
        self._start_mode(world, side, mode)
        self._start_mode(world, other, partner_mode)

    def _on_discard(self, world: World, event: SimEvent) -> None:
        side, mode, pair = event.payload
        if not pair.alive or self.banks[side].get(mode) is not pair:
            return
        del self.banks[side][mode]
        pair.alive = False
        pair.right.alive = False
        self._pairs.pop(id(pair), None)
        self._start_mode(world, side, mode)


# --- Chain protocol (Scenario 2 and the one-satellite memory scheme) --------


@dataclass(frozen=True)
class ChainLink:
    """Resolved parameters of one emissive-memory link in a chain."""

    lower_node: int
    upper_node: int
    emitter_node: int            # satellite holding the emissive memory
    success_prob: float          # per trial, including noise clicks if any
    alpha: float                 # 1.0 for heralded memory loading
    trial_time_s: float          # round trip: photon out, verdict back
    emitter_dephasing_s: float
    receiver_is_memory: bool
    receiver_dephasing_s: float = math.inf

    def __post_init__(self) -> None:
        if not 0.0 < self.success_prob <= 1.0:
            raise ValueError("success_prob must lie in (0, 1]")
        if self.emitter_node not in (self.lower_node, self.upper_node):
            raise ValueError("emitter must be one of the link's endpoints")


@dataclass(frozen=True)
class ChainSetup:
    """A repeater chain: ground station 0, satellites 1..k, ground station k+1."""

    links: tuple[ChainLink, ...]
    n_modes: int
    cutoff_s: float
    # per node index: classical delay to ground A and ground B
    delays_to_a_s: tuple[float, ...]
    delays_to_b_s: tuple[float, ...]

    @property
    def n_nodes(self) -> int:
        return len(self.links) + 1


@dataclass
class _Line:
    """One memory-mode pairing across a link; restarts only when both of its
    slots are free."""

    emitter_qubit: StoredQubit | None = None
    receiver_qubit: StoredQubit | None = None
    pending: bool = False


class ChainProtocol(Protocol):
    """Swap-asap repeater chain with per-link parallel mode lines."""

    def __init__(self, setup: ChainSetup, collect_stats: bool = False):
        self.setup = setup
        self.collect_stats = collect_stats
        self.establishment_log: list[tuple[int, float]] = []
        self.n_lines = setup.n_modes
        self.lines = [
            [_Line() for _ in range(self.n_lines)] for _ in setup.links
        ]
        # eligible stored qubits per (node, side); side 0 = left link, 1 = right
        self.banks: dict[tuple[int, int], dict[tuple[int, int], StoredQubit]] = {}
        for node in range(1, setup.n_nodes - 1):
            self.banks[(node, 0)] = {}
            self.banks[(node, 1)] = {}
        self._streams = []
        self._pairs: dict[int, Pair] = {}

    # -- engine interface

    def bootstrap(self, world: World) -> None:
        self._streams = world.spawn_streams(len(self.setup.links) * self.n_lines)
        for link_idx in range(len(self.setup.links)):
            for line_idx in range(self.n_lines):
                self._start_line(world, link_idx, line_idx)

    def handle(self, world: World, event: SimEvent) -> None:
        if event.kind == "stored":
            self._on_stored(world, event)
        elif event.kind == "confirmed":
            self._on_confirmed(world, event)
        elif event.kind == "cutoff":
            self._on_cutoff(world, event)
        else:
            raise ValueError(f"unexpected event kind {event.kind}")

    def live_pairs(self):
        return list(self._pairs.values())

    # -- link trials

    def _start_line(self, world: World, link_idx: int, line_idx: int) -> None:
        link = self.setup.links[link_idx]
        line = self.lines[link_idx][line_idx]
        rng = self._streams[link_idx * self.n_lines + line_idx]
        trials = sample_geometric(link.success_prob, rng)
        emit_time = world.clock + (trials - 1) * link.trial_time_s
        confirm_time = emit_time + link.trial_time_s
        receive_time = emit_time + link.trial_time_s / 2.0
        if self.collect_stats:
            self.establishment_log.append((link_idx, trials * link.trial_time_s))

        emitter_qubit = StoredQubit(
            node=link.emitter_node,
            dephasing_time_s=link.emitter_dephasing_s,
            stored_time=emit_time,
            eligible_time=confirm_time,
            tag=(link_idx, line_idx),
        )
        receiver_qubit = None
        state = PHI_PLUS
        known_left = known_right = -math.inf
        if link.receiver_is_memory:
            receiver_node = (
                link.lower_node
                if link.emitter_node == link.upper_node
                else link.upper_node
            )
            receiver_qubit = StoredQubit(
                node=receiver_node,
                dephasing_time_s=link.receiver_dephasing_s,
                stored_time=receive_time,
                eligible_time=receive_time,
                tag=(link_idx, line_idx),
            )
        else:
            # photon measured on arrival at the ground station
            state = white_noise(PHI_PLUS, link.alpha)
            if link.emitter_node == link.upper_node:
                known_left = receive_time
            else:
                known_right = receive_time

        if link.emitter_node == link.lower_node:
            left, right = emitter_qubit, receiver_qubit
        else:
            left, right = receiver_qubit, emitter_qubit
        pair = Pair(
            state=state,
            left=left,
            right=right,
            confirmed_time=confirm_time,
            known_left=known_left,
            known_right=known_right,
        )
        for qubit in pair.qubits():
            qubit.pair = pair

        line.pending = True
        if receiver_qubit is not None:
            world.queue.schedule(
                receive_time, "stored", (link_idx, line_idx, pair, receiver_qubit)
            )
        world.queue.schedule(
            confirm_time, "confirmed", (link_idx, line_idx, pair, emitter_qubit)
        )

    def _on_stored(self, world: World, event: SimEvent) -> None:
        link_idx, line_idx, pair, qubit = event.payload
        if not qubit.alive:
            return
        line = self.lines[link_idx][line_idx]
        line.pending = False
        line.emitter_qubit = pair.left if pair.left is not qubit else pair.right
        line.receiver_qubit = qubit
        self._pairs[id(pair)] = pair
        self._mark_eligible(world, qubit)

    def _on_confirmed(self, world: World, event: SimEvent) -> None:
        link_idx, line_idx, pair, qubit = event.payload
        if not qubit.alive:
            return
        link = self.setup.links[link_idx]
        line = self.lines[link_idx][line_idx]
        if not link.receiver_is_memory:
            line.pending = False
            line.emitter_qubit = qubit
            self._pairs[id(pair)] = pair
        self._mark_eligible(world, qubit)

    def _mark_eligible(self, world: World, qubit: StoredQubit) -> None:
        qubit.eligible = True
        node = qubit.node
        link_idx, line_idx = qubit.tag
        side = 0 if link_idx == node - 1 else 1
        self.banks[(node, side)][(link_idx, line_idx)] = qubit
        if math.isfinite(self.setup.cutoff_s):
            world.queue.schedule(
                qubit.eligible_time + self.setup.cutoff_s, "cutoff", (qubit,)
            )
        self._swap_check(world, node)

    # -- swapping

    def _swap_check(self, world: World, node: int) -> None:
        left_bank = self.banks[(node, 0)]
        right_bank = self.banks[(node, 1)]
        while left_bank and right_bank:
            q_left = left_bank.pop(
                min(left_bank, key=lambda k: (left_bank[k].stored_time, k))
            )
            q_right = right_bank.pop(
                min(right_bank, key=lambda k: (right_bank[k].stored_time, k))
            )
            self._do_swap(world, node, q_left, q_right)

    def _do_swap(
        self, world: World, node: int, q_left: StoredQubit, q_right: StoredQubit
    ) -> None:
        now = world.clock
        pair_left = q_left.pair
        pair_right = q_right.pair
        lazy_update(pair_left, now)
        lazy_update(pair_right, now)
        state = swap(pair_left.state, pair_right.state)
        new_pair = Pair(
            state=state,
            left=pair_left.left if pair_left.left is not q_left else None,
            right=pair_right.right if pair_right.right is not q_right else None,
            confirmed_time=max(pair_left.confirmed_time, pair_right.confirmed_time),
            known_left=max(
                pair_left.known_left,
                pair_right.known_left,
                now + self.setup.delays_to_a_s[node],
            ),
            known_right=max(
                pair_left.known_right,
                pair_right.known_right,
                now + self.setup.delays_to_b_s[node],
            ),
        )
        for old in (pair_left, pair_right):
            old.alive = False
            self._pairs.pop(id(old), None)
        self._consume(world, q_left)
        self._consume(world, q_right)
        if new_pair.left is None and new_pair.right is None:
            world.emit(
                SampleRecord(
                    max(new_pair.known_left, new_pair.known_right), new_pair.state
                )
            )
        else:
            for qubit in new_pair.qubits():
                qubit.pair = new_pair
            self._pairs[id(new_pair)] = new_pair

    def _consume(self, world: World, qubit: StoredQubit) -> None:
        qubit.alive = False
        self._free_slot(world, qubit)

    def _free_slot(self, world: World, qubit: StoredQubit) -> None:
        link_idx, line_idx = qubit.tag
        line = self.lines[link_idx][line_idx]
        if line.emitter_qubit is qubit:
            line.emitter_qubit = None
        if line.receiver_qubit is qubit:
            line.receiver_qubit = None
        if (
            not line.pending
            and line.emitter_qubit is None
            and line.receiver_qubit is None
        ):
            self._start_line(world, link_idx, line_idx)

    # -- cutoff

    def _on_cutoff(self, world: World, event: SimEvent) -> None:
        (qubit,) = event.payload
        if not qubit.alive or qubit.pair is None or not qubit.pair.alive:
            return
        pair = qubit.pair
        pair.alive = False
        self._pairs.pop(id(pair), None)
        for held in pair.qubits():
            if held.alive:
                self._remove_from_bank(held)
                self._consume(world, held)

    def _remove_from_bank(self, qubit: StoredQubit) -> None:
        if not qubit.eligible:
            return
        link_idx, line_idx = qubit.tag
        side = 0 if link_idx == qubit.node - 1 else 1
        self.banks[(qubit.node, side)].pop((link_idx, line_idx), None)


# --- setup builders ---------------------------------------------------------


def _ground_arm(
    ground_pos, sat_pos, optical, background, emissive_memory: bool
):
    distance_km = geometry.pair_distance_km(ground_pos, sat_pos)
    elevation = geometry.elevation_from_positions(ground_pos, sat_pos)
    if elevation <= 0.0:
        raise VisibilityError(
            f"satellite below horizon (elevation {elevation:.4f} rad)"
        )
    budget = optics.ground_link_budget(
        distance_km, elevation, optical, background, emissive_memory=emissive_memory
    )
    return distance_km, budget


def build_scenario1(
    layout: GroundTrackLayout,
    optical: optics.OpticalParams,
    background: optics.BackgroundParams,
    protocol: ProtocolConfig,
    geometry_cfg: GeometryConfig = DEFAULT_GEOMETRY,
    orbit_phase_s: float = 0.0,
) -> Scenario1Setup:
    nodes = geometry.node_positions(layout, orbit_phase_s, geometry_cfg)
    slot_period = protocol.n_modes / protocol.clock_rate_hz

    def side(ground_pos, source_pos) -> Scenario1Side:
        ground_km, ground_budget = _ground_arm(
            ground_pos, source_pos, optical, background, emissive_memory=False
        )
        intersat_km = geometry.pair_distance_km(source_pos, nodes.sat_c)
        memory_budget = optics.intersat_link_budget(
            intersat_km, optical, emissive_memory=False, absorptive_memory=True
        )
        ground_prob, alpha = optics.effective_click(
            ground_budget.efficiency, ground_budget.noise_click_prob
        )
        wait = memory_wait_s(
            ground_km,
            intersat_km,
            geometry.pair_distance_km(ground_pos, nodes.sat_c),
            geometry_cfg,
        )
        return Scenario1Side(
            loading_prob=memory_budget.efficiency,
            ground_prob=ground_prob,
            ground_alpha=alpha,
            memory_wait_s=wait,
            slot_period_s=slot_period,
            dephasing_time_s=protocol.dephasing_time_s,
        )

    completion = max(
        geometry.propagation_delay_s(
            geometry.pair_distance_km(nodes.sat_c, nodes.ground_a), geometry_cfg
        ),
        geometry.propagation_delay_s(
            geometry.pair_distance_km(nodes.sat_c, nodes.ground_b), geometry_cfg
        ),
    )
    return Scenario1Setup(
        side_a=side(nodes.ground_a, nodes.sat_a),
        side_b=side(nodes.ground_b, nodes.sat_b),
        n_modes=protocol.n_modes,
        cutoff_s=protocol.cutoff_or_inf,
        completion_delay_s=completion,
    )


def _chain_setup(
    positions: list,
    emitter_nodes: list[int],
    optical: optics.OpticalParams,
    background: optics.BackgroundParams,
    protocol: ProtocolConfig,
    geometry_cfg: GeometryConfig,
) -> ChainSetup:
    """Build a chain over ``positions`` (ground, satellites..., ground)."""
    n_nodes = len(positions)
    links = []
    for idx in range(n_nodes - 1):
        lower, upper = idx, idx + 1
        emitter = emitter_nodes[idx]
        is_ground_link = lower == 0 or upper == n_nodes - 1
        if is_ground_link:
            ground_pos = positions[0] if lower == 0 else positions[-1]
            sat_pos = positions[upper] if lower == 0 else positions[lower]
            distance_km, budget = _ground_arm(
                ground_pos, sat_pos, optical, background, emissive_memory=True
            )
            prob, alpha = optics.effective_click(
                budget.efficiency, budget.noise_click_prob
            )
            receiver_is_memory = False
        else:
            distance_km = geometry.pair_distance_km(positions[lower], positions[upper])
            budget = optics.intersat_link_budget(
                distance_km, optical, emissive_memory=True, absorptive_memory=True
            )
            prob, alpha = budget.efficiency, 1.0
            receiver_is_memory = True
        links.append(
            ChainLink(
                lower_node=lower,
                upper_node=upper,
                emitter_node=emitter,
                success_prob=prob,
                alpha=alpha,
                trial_time_s=2.0
                * geometry.propagation_delay_s(distance_km, geometry_cfg),
                emitter_dephasing_s=protocol.dephasing_time_s,
                receiver_is_memory=receiver_is_memory,
                receiver_dephasing_s=protocol.dephasing_time_s,
            )
        )
    delays_a = tuple(
        geometry.propagation_delay_s(
            geometry.pair_distance_km(pos, positions[0]), geometry_cfg
        )
        for pos in positions
    )
    delays_b = tuple(
        geometry.propagation_delay_s(
            geometry.pair_distance_km(pos, positions[-1]), geometry_cfg
        )
        for pos in positions
    )
    return ChainSetup(
        links=tuple(links),
        n_modes=protocol.n_modes,
        cutoff_s=protocol.cutoff_or_inf,
        delays_to_a_s=delays_a,
        delays_to_b_s=delays_b,
    )


def build_scenario2(
    layout: GroundTrackLayout,
    optical: optics.OpticalParams,
    background: optics.BackgroundParams,
    protocol: ProtocolConfig,
    geometry_cfg: GeometryConfig = DEFAULT_GEOMETRY,
    orbit_phase_s: float = 0.0,
) -> ChainSetup:
    nodes = geometry.node_positions(layout, orbit_phase_s, geometry_cfg)
    positions = [nodes.ground_a, nodes.sat_a, nodes.sat_c, nodes.sat_b, nodes.ground_b]
    # S_A emits toward A and S_C; S_B emits toward S_C and B
    return _chain_setup(
        positions, [1, 1, 3, 3], optical, background, protocol, geometry_cfg
    )


def build_one_sat_memory(
    layout: GroundTrackLayout,
    optical: optics.OpticalParams,
    background: optics.BackgroundParams,
    protocol: ProtocolConfig,
    geometry_cfg: GeometryConfig = DEFAULT_GEOMETRY,
    orbit_phase_s: float = 0.0,
) -> ChainSetup:
    nodes = geometry.node_positions(layout, orbit_phase_s, geometry_cfg)
    positions = [nodes.ground_a, nodes.sat_c, nodes.ground_b]
    return _chain_setup(
        positions, [1, 1], optical, background, protocol, geometry_cfg
    )


def one_sat_baseline_rate(
    layout: GroundTrackLayout,
    optical: optics.OpticalParams,
    background: optics.BackgroundParams,
    protocol: ProtocolConfig,
    geometry_cfg: GeometryConfig = DEFAULT_GEOMETRY,
    orbit_phase_s: float = 0.0,
) -> float:
    """Coincidence rate of the memoryless single-satellite reference.

    The source fires at the clock rate and both photons must arrive; all loss
    factors apply but no noise channels, so the key rate equals the raw rate.
    """
    nodes = geometry.node_positions(layout, orbit_phase_s, geometry_cfg)
    rate = protocol.clock_rate_hz
    for ground_pos in (nodes.ground_a, nodes.ground_b):
        _, budget = _ground_arm(
            ground_pos, nodes.sat_c, optical, background, emissive_memory=False
        )
        rate *= budget.efficiency
    return rate


# --- entry points -----------------------------------------------------------


def run_scenario1(
    setup: Scenario1Setup, samples: int, seed, eager_updates: bool = False
) -> list[SampleRecord]:
    return run(Scenario1Protocol(setup), samples, seed, eager_updates=eager_updates)


def run_chain(
    setup: ChainSetup, samples: int, seed, eager_updates: bool = False
) -> list[SampleRecord]:
    return run(ChainProtocol(setup), samples, seed, eager_updates=eager_updates)


SCENARIOS = {
    "scenario1": build_scenario1,
    "scenario2": build_scenario2,
    "one_sat_memory": build_one_sat_memory,
    "one_sat_baseline": None,
}
